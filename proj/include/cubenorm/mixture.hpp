#pragma once

#include "cubenorm/density.hpp"
#include "cubenorm/quadrature.hpp"

namespace cubenorm::mixture {

using quadrature::QuadratureResult;

// Numerical evaluation of the uniform-correlation mixture in dimension 2:
//   integral_{-1}^{1} (1/2) f(x | rho) d rho,
// which the closed form says equals (1 - Phi(||x||_inf)) / 2. The integrand
// has inverse-square-root behavior at rho = +-1; the interval is split at the
// exponent minimizer a(x) when |a(x)| < 0.999 so each piece is monotone in
// the exponent. tol >= 1e-12.
QuadratureResult mixture_density_by_quadrature(const Point& x, double tol = 1e-10);

// Both sides of the Laplace-transform identity
//   integral_{1/2}^inf (4 pi z sqrt(2z-1))^(-1) e^(-x1^2 z) dz
//     = (1 - Phi(x1)) / 2,   x1 > 0.
// lhs is computed by quadrature after removing the sqrt singularity at
// z = 1/2; rhs is the closed form. |lhs - rhs| <= 10*tol on convergence;
// throws NotConverged otherwise.
struct LaplacePair {
  double lhs = 0.0;
  double rhs = 0.0;
  QuadratureResult lhs_quadrature;
};
LaplacePair laplace_identity_check(double x1, double tol = 1e-12);

// Diagnostic: integrate the mixture split at a(x) and unsplit, and report
// whether the two agree within the combined error estimates. `degenerate`
// marks |a(x)| = 1, where one piece is empty. Throws UndefinedArgmin for
// x = 0 (no split point exists).
struct SplitReport {
  double split_point = 0.0;
  bool degenerate = false;
  double piece_low = 0.0;       // integral over [-1, a]
  double piece_high = 0.0;      // integral over [a, 1]
  double combined = 0.0;        // piece_low + piece_high
  double full = 0.0;            // unsplit integral over [-1, 1]
  double discrepancy = 0.0;     // |combined - full|
  double combined_error_estimate = 0.0;
  bool monotone_low = false;    // exponent nonincreasing on [-1, a]
  bool monotone_high = false;   // exponent nondecreasing on [a, 1]
  bool consistent = false;
};
SplitReport split_point_consistency(const Point& x, double tol = 1e-10);

}  // namespace cubenorm::mixture
