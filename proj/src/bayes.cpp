#include "cubenorm/bayes.hpp"

#include <cmath>
#include <stdexcept>

#include "cubenorm/quadrature.hpp"

namespace cubenorm::bayes {
namespace {

constexpr double kPi = 3.141592653589793;

double normalizer(const Point& x) {
  const double den = density::closed_form_density2(x);
  if (den <= 0.0)
    throw std::underflow_error("posterior: mixture density underflows at this observation");
  return den;
}

// rho-integrable form of the posterior for the normalization quadrature; the
// om <= 0 guard covers substituted evaluations that round onto an endpoint.
std::function<double(double)> posterior_integrand(const Point& x) {
  const double x1 = x[0];
  const double x2 = x[1];
  const double den = normalizer(x);
  return [x1, x2, den](double r) {
    const double om = (1.0 - r) * (1.0 + r);
    if (om <= 0.0) return 0.0;
    const double q = (x1 * x1 + x2 * x2 - 2.0 * r * x1 * x2) / (2.0 * om);
    return std::exp(-q) / (4.0 * kPi * std::sqrt(om)) / den;
  };
}

}  // namespace

double posterior_rho_density(const Point& x, Correlation rho) {
  return 0.5 * density::conditional_density(x, rho) / normalizer(x);
}

double bayes_factor_rho0(const Point& x) {
  return density::conditional_density(x, Correlation(0.0)) / normalizer(x);
}

PosteriorCurve posterior_curve(const Point& x, int grid_size) {
  if (x.dim() != 2) throw std::invalid_argument("posterior_curve: point must have p = 2");
  if (grid_size < 16) throw std::invalid_argument("posterior_curve: grid_size must be >= 16");

  PosteriorCurve curve;
  curve.rho_grid.resize(grid_size);
  curve.density_values.resize(grid_size);
  // Chebyshev nodes, ascending; strictly inside (-1, 1) so the endpoint
  // singularities are never touched.
  for (int j = 0; j < grid_size; ++j) {
    const double rho = -std::cos(kPi * (2.0 * j + 1.0) / (2.0 * grid_size));
    curve.rho_grid[j] = rho;
    curve.density_values[j] = posterior_rho_density(x, Correlation(rho));
  }
  auto res = quadrature::integrate_finite(posterior_integrand(x), -1.0, 1.0, 1e-9, true, true);
  // Non-convergence lands in the residual rather than being thrown.
  curve.normalization_residual = res.value - 1.0;
  return curve;
}

}  // namespace cubenorm::bayes
