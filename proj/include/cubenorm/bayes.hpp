#pragma once

#include <Eigen/Core>

#include "cubenorm/density.hpp"

namespace cubenorm::bayes {

// Posterior density of rho under the uniform prior on [-1, 1] after observing
// one bivariate point x:
//   pi(rho | x) = (1/2) f(x | rho) / f2(x),
// with f2 the closed-form mixture. At x = 0 this is the arcsine-type law
// 1 / (pi sqrt(1 - rho^2)). Throws SingularCorrelation at |rho| = 1.
double posterior_rho_density(const Point& x, Correlation rho);

// Bayes factor of the point hypothesis rho = 0 against the uniform prior:
//   BF(x) = f(x | 0) / f2(x).  BF((0,0)) = 2/pi.
double bayes_factor_rho0(const Point& x);

// Posterior evaluated on a Chebyshev-spaced grid (open in (-1, 1), so the
// endpoint singularities are never touched), plus the defect of the posterior
// from integrating to one.
struct PosteriorCurve {
  Eigen::VectorXd rho_grid;        // ascending, strictly inside (-1, 1)
  Eigen::VectorXd density_values;  // pi(rho_j | x)
  double normalization_residual = 0.0;
};

// grid_size >= 16 (throws std::invalid_argument below that). The residual is
// computed by endpoint-aware quadrature of the posterior over (-1, 1); any
// quadrature imprecision lands in the residual rather than being thrown.
PosteriorCurve posterior_curve(const Point& x, int grid_size = 64);

}  // namespace cubenorm::bayes
