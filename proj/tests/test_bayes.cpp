#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "cubenorm/bayes.hpp"
#include "cubenorm/quadrature.hpp"
#include "doctest.h"

using namespace cubenorm;
namespace by = cubenorm::bayes;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("posterior at the origin is the arcsine-type law") {
  CHECK(std::fabs(by::posterior_rho_density(Point{0.0, 0.0}, Correlation(0.0)) -
                  0.3183098861837907) <= 1e-16);
  CHECK(std::fabs(by::posterior_rho_density(Point{0.0, 0.0}, Correlation(0.6)) -
                  0.3978873577297384) <= 1e-15);
  for (double r = -0.95; r <= 0.95 + 1e-12; r += 0.05) {
    const double want = 1.0 / (kPi * std::sqrt((1.0 - r) * (1.0 + r)));
    CHECK(std::fabs(by::posterior_rho_density(Point{0.0, 0.0}, Correlation(r)) - want) <= 1e-10);
  }
  CHECK_THROWS_AS((void)by::posterior_rho_density(Point{0.0, 0.0}, Correlation(1.0)),
                  SingularCorrelation);
}

TEST_CASE("posterior integrates to one at scattered observations") {
  const Point pts[] = {Point{0.0, 0.0},  Point{1.0, 0.5},  Point{2.0, 1.0},
                       Point{-1.0, 3.0}, Point{1.0, -1.0}, Point{0.5, 0.5},
                       Point{3.0, 3.0},  Point{-2.0, -2.0}, Point{0.0, 2.0}};
  for (const auto& x : pts) {
    const auto mass = quadrature::integrate_finite(
        [&x](double r) {
          const double om = (1.0 - r) * (1.0 + r);
          if (om <= 0.0) return 0.0;
          return by::posterior_rho_density(x, Correlation(r));
        },
        -1.0, 1.0, 1e-10, true, true);
    CHECK(mass.converged);
    CHECK(std::fabs(mass.value - 1.0) <= 1e-8);
  }
}

TEST_CASE("posterior curve: grid shape, values, residual") {
  const auto curve = by::posterior_curve(Point{1.0, 0.5}, 64);
  REQUIRE(curve.rho_grid.size() == 64);
  REQUIRE(curve.density_values.size() == 64);
  CHECK(std::fabs(curve.normalization_residual) <= 1e-6);

  // Ascending, strictly inside (-1, 1).
  CHECK(curve.rho_grid[0] > -1.0);
  CHECK(curve.rho_grid[63] < 1.0);
  for (int j = 1; j < 64; ++j) CHECK(curve.rho_grid[j] > curve.rho_grid[j - 1]);

  // Values are exactly the pointwise evaluations.
  for (int j = 0; j < 64; ++j) {
    CHECK(curve.density_values[j] ==
          by::posterior_rho_density(Point{1.0, 0.5}, Correlation(curve.rho_grid[j])));
  }

  CHECK_THROWS_AS((void)by::posterior_curve(Point{1.0, 0.5}, 15), std::invalid_argument);
  CHECK_THROWS_AS((void)by::posterior_curve(Point{1.0, 0.5}, 0), std::invalid_argument);
}

TEST_CASE("posterior mode sits at the exponent minimizer") {
  // For x = (2, 1) the conditional density peaks at rho* = 0.63889691947135262;
  // the curve's argmax must land within one grid cell of it.
  const auto curve = by::posterior_curve(Point{2.0, 1.0}, 64);
  int arg = 0;
  for (int j = 1; j < 64; ++j)
    if (curve.density_values[j] > curve.density_values[arg]) arg = j;
  const double cell = (arg > 0 && arg < 63)
                          ? std::max(curve.rho_grid[arg] - curve.rho_grid[arg - 1],
                                     curve.rho_grid[arg + 1] - curve.rho_grid[arg])
                          : 0.1;
  CHECK(std::fabs(curve.rho_grid[arg] - 0.63889691947135262) <= cell);
}

TEST_CASE("Bayes factor anchors and symmetries") {
  CHECK(std::fabs(by::bayes_factor_rho0(Point{0.0, 0.0}) - 2.0 / kPi) <= 1e-12);
  CHECK(std::fabs(by::bayes_factor_rho0(Point{2.0, 2.0}) - 0.25626440072243148) <= 1e-13);

  // BF depends on x through (|x1|, |x2|) up to swap: flipping one sign flips
  // rho -> -rho inside both numerator and denominator integrals.
  CHECK(by::bayes_factor_rho0(Point{3.0, -3.0}) == by::bayes_factor_rho0(Point{-3.0, 3.0}));
  CHECK(std::fabs(by::bayes_factor_rho0(Point{3.0, 3.0}) -
                  by::bayes_factor_rho0(Point{3.0, -3.0})) <= 1e-12);
  CHECK(std::fabs(by::bayes_factor_rho0(Point{1.5, 0.7}) -
                  by::bayes_factor_rho0(Point{0.7, 1.5})) <= 1e-15);
}

TEST_CASE("posterior underflows loudly far outside the bulk") {
  CHECK_THROWS_AS((void)by::posterior_rho_density(Point{40.0, 40.0}, Correlation(0.0)),
                  std::underflow_error);
  CHECK_THROWS_AS((void)by::bayes_factor_rho0(Point{40.0, 40.0}), std::underflow_error);
}
