#include "cubenorm/density.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cubenorm/quadrature.hpp"
#include "cubenorm/specfun.hpp"

namespace cubenorm {
namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kInvSqrt2Pi = 0.3989422804014327;

void require_dim2(const Point& x, const char* op) {
  if (x.dim() != 2) throw std::invalid_argument(std::string(op) + ": point must have p = 2");
}

}  // namespace

Point::Point(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (coords_.size() < 1) throw std::invalid_argument("Point: dimension must be >= 1");
  if (!coords_.allFinite()) throw std::invalid_argument("Point: coordinates must be finite");
  max_norm_ = coords_.cwiseAbs().maxCoeff();
}

Point::Point(std::initializer_list<double> coords)
    : Point(Eigen::Map<const Eigen::VectorXd>(coords.begin(),
                                              static_cast<Eigen::Index>(coords.size()))) {}

Correlation::Correlation(double rho) : rho_(rho) {
  if (!(rho >= -1.0 && rho <= 1.0))
    throw std::invalid_argument("Correlation: rho must lie in [-1, 1]");
}

DensityValue DensityValue::finite(double v) {
  if (!std::isfinite(v) || v < 0.0)
    throw std::invalid_argument("DensityValue: finite value must be nonnegative");
  return DensityValue(v, false);
}

DensityValue DensityValue::infinite() {
  return DensityValue(std::numeric_limits<double>::infinity(), true);
}

double DensityValue::value() const noexcept { return value_; }

namespace density {

double conditional_density(const Point& x, Correlation rho) {
  require_dim2(x, "conditional_density");
  const double r = rho.value();
  if (std::fabs(r) == 1.0) throw SingularCorrelation(r);
  const double x1 = x[0];
  const double x2 = x[1];
  const double om = (1.0 - r) * (1.0 + r);
  const double q = (x1 * x1 + x2 * x2 - 2.0 * r * x1 * x2) / (2.0 * om);
  return std::exp(-q) / (2.0 * kPi * std::sqrt(om));
}

double closed_form_density2(const Point& x) {
  require_dim2(x, "closed_form_density2");
  return 0.5 * specfun::std_normal_sf(x.max_norm());
}

DensityValue density_p(const Point& x, double tol) {
  const int p = x.dim();
  const double m = x.max_norm();
  // Closed forms in low dimension (exactly the k = 1, 0 tail integrals with
  // the prefactor folded in, avoiding a sqrt(2*pi) round trip).
  if (p == 1) return DensityValue::finite(specfun::std_normal_pdf(m));
  if (p == 2) return DensityValue::finite(0.5 * specfun::std_normal_sf(m));
  if (m == 0.0) return DensityValue::infinite();
  const double prefactor = std::ldexp(1.0, 1 - p) * kInvSqrt2Pi;
  const double tail = specfun::gaussian_power_tail(specfun::TailOrder::for_dimension(p), m, tol);
  return DensityValue::finite(prefactor * tail);
}

double exponent_g(const Point& x, Correlation rho) {
  require_dim2(x, "exponent_g");
  const double r = rho.value();
  const double x1 = x[0];
  const double x2 = x[1];
  if (std::fabs(r) == 1.0) {
    // The numerator is (x1 - r*x2)^2 here; g has a finite limit iff it
    // vanishes, which is the |x1| = |x2| boundary-argmin case.
    if (x1 == r * x2) return 0.5 * x1 * x1;
    throw SingularCorrelation(r);
  }
  if (x1 == 0.0 && x2 == 0.0) return 0.0;
  const double om = (1.0 - r) * (1.0 + r);
  return (x1 * x1 + x2 * x2 - 2.0 * r * x1 * x2) / (2.0 * om);
}

double exponent_g_derivative(const Point& x, Correlation rho) {
  require_dim2(x, "exponent_g_derivative");
  const double r = rho.value();
  if (std::fabs(r) == 1.0) throw SingularCorrelation(r);
  const double x1 = x[0];
  const double x2 = x[1];
  const double om = (1.0 - r) * (1.0 + r);
  return -(r * x1 - x2) * (r * x2 - x1) / (om * om);
}

Correlation exponent_argmin(const Point& x) {
  require_dim2(x, "exponent_argmin");
  const double a1 = std::fabs(x[0]);
  const double a2 = std::fabs(x[1]);
  if (a1 == 0.0 && a2 == 0.0) throw UndefinedArgmin();
  if (a1 == 0.0 || a2 == 0.0) return Correlation(0.0);  // sgn(0) = 0 convention
  const double sign = ((x[0] > 0.0) == (x[1] > 0.0)) ? 1.0 : -1.0;
  const double ratio = std::min(a1, a2) / std::max(a1, a2);
  return Correlation(sign * ratio);
}

double marginalize_last(int p, const Point& x_prefix, double tol) {
  if (p < 2) throw std::invalid_argument("marginalize_last: p must be >= 2");
  if (x_prefix.dim() != p - 1)
    throw std::invalid_argument("marginalize_last: prefix must have dimension p - 1");
  if (!std::isfinite(tol) || tol < 1e-12)
    throw std::invalid_argument("marginalize_last: tol must be >= 1e-12");
  const double m = x_prefix.max_norm();
  // The marginal equals the (p-1)-dimensional density, which is infinite at
  // the origin for p - 1 >= 3; no finite real can be returned there.
  if (m == 0.0 && p >= 4) throw DivergentAtOrigin(3 - p);

  const double prefactor = std::ldexp(1.0, 1 - p) * kInvSqrt2Pi;
  const auto order = specfun::TailOrder::for_dimension(p);
  const double inner_tol = std::max(tol * 1e-2, 1e-14);
  auto height = [prefactor, order, inner_tol](double u) {
    return prefactor * specfun::gaussian_power_tail(order, u, inner_tol);
  };

  const double plateau = (m > 0.0) ? 2.0 * m * height(m) : 0.0;
  const double tail_tol = std::max(0.25 * tol, 1e-14);
  auto res = quadrature::integrate_semi_infinite(height, m, tail_tol,
                                                 quadrature::TailDecay::gaussian, 1.0);
  if (!res.converged) throw quadrature::NotConverged(res);
  return plateau + 2.0 * res.value;
}

}  // namespace density
}  // namespace cubenorm
