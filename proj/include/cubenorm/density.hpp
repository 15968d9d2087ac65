#pragma once

#include <Eigen/Core>
#include <initializer_list>

#include "cubenorm/errors.hpp"

namespace cubenorm {

// A point of R^p, p >= 1, with finite coordinates. Caches the max norm.
class Point {
 public:
  explicit Point(Eigen::VectorXd coords);
  Point(std::initializer_list<double> coords);

  const Eigen::VectorXd& coords() const noexcept { return coords_; }
  int dim() const noexcept { return static_cast<int>(coords_.size()); }
  double max_norm() const noexcept { return max_norm_; }
  double operator[](int i) const { return coords_[i]; }

 private:
  Eigen::VectorXd coords_;
  double max_norm_;
};

// Correlation parameter in [-1, 1]. The closed interval is representable;
// operations that are singular at +-1 throw SingularCorrelation themselves.
class Correlation {
 public:
  explicit Correlation(double rho);
  double value() const noexcept { return rho_; }

 private:
  double rho_;
};

// Density value that may be +infinity (the p >= 3 density diverges at the
// origin). Infinity is a tagged value here, not an error.
class DensityValue {
 public:
  static DensityValue finite(double v);
  static DensityValue infinite();
  bool is_infinite() const noexcept { return infinite_; }
  // Finite value; +inf when is_infinite().
  double value() const noexcept;

 private:
  DensityValue(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

namespace density {

// Bivariate standard normal density with correlation rho at x (p must be 2).
// Throws SingularCorrelation at |rho| = 1.
double conditional_density(const Point& x, Correlation rho);

// Closed form of the uniform-correlation mixture in dimension 2:
//   f2(x) = (1 - Phi(max(|x1|,|x2|))) / 2.
double closed_form_density2(const Point& x);

// Density in dimension p >= 1:
//   f_p(x) = 2^(1-p) (2*pi)^(-1/2) * integral_{||x||_inf}^inf y^(2-p) e^(-y^2/2) dy.
// Dimensions 1 and 2 reduce to closed forms; p >= 3 at the origin is infinite.
DensityValue density_p(const Point& x, double tol = 1e-12);

// Exponent profile of the conditional density (p must be 2):
//   g(rho) = (x1^2 + x2^2 - 2 rho x1 x2) / (2 (1 - rho^2)).
// g(rho) = 0 for x = 0 by convention. At |rho| = 1 the profile has a finite
// limit exactly when x1 = rho * x2 (there g -> x1^2 / 2, the profile minimum
// for |x1| = |x2|); that limit is returned so g can be evaluated at a
// boundary argmin. Every other |rho| = 1 throws SingularCorrelation.
double exponent_g(const Point& x, Correlation rho);

// d/d rho of the exponent profile:
//   g'(rho) = -(rho x1 - x2)(rho x2 - x1) / (1 - rho^2)^2.
double exponent_g_derivative(const Point& x, Correlation rho);

// Unique minimizer of the exponent profile over [-1, 1]:
//   a(x) = sgn(x1 x2) * min(|x1|,|x2|) / max(|x1|,|x2|),  sgn(0) = 0.
// Throws UndefinedArgmin for x = 0, where the profile is constant.
Correlation exponent_argmin(const Point& x);

// Integrates the last coordinate out of the dimension-p density at the
// (p-1)-dimensional prefix, using the height function h_p of f_p:
//   integral f_p(prefix, x_p) dx_p = 2 m h_p(m) + 2 integral_m^inf h_p(u) du,
// with m = ||prefix||_inf. Equals the dimension-(p-1) density at the prefix.
double marginalize_last(int p, const Point& x_prefix, double tol = 1e-10);

}  // namespace density
}  // namespace cubenorm
