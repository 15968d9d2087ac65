#include "cubenorm/mixture.hpp"

#include <cmath>
#include <stdexcept>

#include "cubenorm/specfun.hpp"

namespace cubenorm::mixture {
namespace {

constexpr double kPi = 3.141592653589793;

// Half the conditional density as a plain function of rho. The 1/sqrt(1-rho^2)
// factor is the endpoint singularity the integration hints remove; om <= 0
// can only appear when a substituted evaluation point rounds onto the
// endpoint itself, where the exponential factor has long since underflowed
// (or, for x = 0, where the hinted engine never pushes evaluations).
std::function<double(double)> mixture_integrand(const Point& x) {
  const double x1 = x[0];
  const double x2 = x[1];
  return [x1, x2](double r) {
    const double om = (1.0 - r) * (1.0 + r);
    if (om <= 0.0) return 0.0;
    const double q = (x1 * x1 + x2 * x2 - 2.0 * r * x1 * x2) / (2.0 * om);
    return std::exp(-q) / (4.0 * kPi * std::sqrt(om));
  };
}

QuadratureResult combine(const QuadratureResult& a, const QuadratureResult& b) {
  QuadratureResult out;
  out.value = a.value + b.value;
  out.abs_error_estimate = a.abs_error_estimate + b.abs_error_estimate;
  out.evaluations = a.evaluations + b.evaluations;
  out.converged = a.converged && b.converged;
  return out;
}

}  // namespace

QuadratureResult mixture_density_by_quadrature(const Point& x, double tol) {
  if (x.dim() != 2)
    throw std::invalid_argument("mixture_density_by_quadrature: point must have p = 2");
  if (!std::isfinite(tol) || tol < 1e-12)
    throw std::invalid_argument("mixture_density_by_quadrature: tol must be >= 1e-12");
  auto f = mixture_integrand(x);

  // Split at the exponent minimizer when it is safely interior, so each piece
  // has a monotone exponent and one singular endpoint.
  double a = 0.0;
  bool split = false;
  if (x.max_norm() > 0.0) {
    a = density::exponent_argmin(x).value();
    split = std::fabs(a) < 0.999;
  }
  if (!split) return quadrature::integrate_finite(f, -1.0, 1.0, tol, true, true);
  const auto low = quadrature::integrate_finite(f, -1.0, a, 0.5 * tol, true, false);
  const auto high = quadrature::integrate_finite(f, a, 1.0, 0.5 * tol, false, true);
  return combine(low, high);
}

LaplacePair laplace_identity_check(double x1, double tol) {
  if (!std::isfinite(x1) || x1 <= 0.0)
    throw std::invalid_argument("laplace_identity_check: x1 must be positive");
  const double rate = x1 * x1;  // decay of exp(-x1^2 z) in z
  auto f = [rate](double z) {
    const double s = 2.0 * z - 1.0;
    if (s <= 0.0) return 0.0;
    return std::exp(-rate * z) / (4.0 * kPi * z * std::sqrt(s));
  };
  auto res = quadrature::integrate_semi_infinite(f, 0.5, tol, quadrature::TailDecay::exponential,
                                                 rate, /*left_inverse_sqrt=*/true);
  if (!res.converged) throw quadrature::NotConverged(res);
  LaplacePair out;
  out.lhs = res.value;
  out.rhs = 0.5 * specfun::std_normal_sf(x1);
  out.lhs_quadrature = res;
  return out;
}

SplitReport split_point_consistency(const Point& x, double tol) {
  if (x.dim() != 2)
    throw std::invalid_argument("split_point_consistency: point must have p = 2");
  const double a = density::exponent_argmin(x).value();  // throws UndefinedArgmin at x = 0
  auto f = mixture_integrand(x);

  SplitReport rep;
  rep.split_point = a;
  rep.degenerate = std::fabs(a) == 1.0;

  const auto full = quadrature::integrate_finite(f, -1.0, 1.0, tol, true, true);
  rep.full = full.value;

  QuadratureResult low;
  QuadratureResult high;
  if (rep.degenerate) {
    // One side is the empty interval; the other is the full integral.
    if (a > 0.0) low = full;
    else high = full;
  } else {
    low = quadrature::integrate_finite(f, -1.0, a, 0.5 * tol, true, false);
    high = quadrature::integrate_finite(f, a, 1.0, 0.5 * tol, false, true);
  }
  rep.piece_low = low.value;
  rep.piece_high = high.value;
  rep.combined = low.value + high.value;
  rep.discrepancy = std::fabs(rep.combined - rep.full);
  rep.combined_error_estimate =
      low.abs_error_estimate + high.abs_error_estimate + full.abs_error_estimate;

  // Spot-check that the exponent is monotone along each nonempty piece.
  auto monotone = [&x](double lo, double hi, bool nonincreasing) {
    if (hi - lo <= 0.0) return true;
    const double slack = 1e-12;
    double prev = 0.0;
    for (int i = 0; i < 5; ++i) {
      const double r = lo + (hi - lo) * (i + 0.5) / 5.0;
      const double g = density::exponent_g(x, Correlation(r));
      if (i > 0) {
        if (nonincreasing && g > prev + slack * std::max(1.0, std::fabs(prev))) return false;
        if (!nonincreasing && g < prev - slack * std::max(1.0, std::fabs(prev))) return false;
      }
      prev = g;
    }
    return true;
  };
  rep.monotone_low = monotone(-1.0, a, true);
  rep.monotone_high = monotone(a, 1.0, false);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double floor = 64.0 * eps * std::max(1.0, std::fabs(rep.full));
  rep.consistent = rep.discrepancy <= rep.combined_error_estimate + floor;
  return rep;
}

}  // namespace cubenorm::mixture
