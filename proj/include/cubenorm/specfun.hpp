#pragma once

#include "cubenorm/errors.hpp"

namespace cubenorm::specfun {

// Scaled complementary error function pieces (Cody-style rational fits,
// relative accuracy ~1e-16 across the double range).
double erf(double x);
double erfc(double x);

// Standard normal density, CDF, survival function. std_normal_sf keeps full
// relative accuracy in the upper tail (it is erfc-based, not 1 - cdf).
double std_normal_pdf(double x);
double std_normal_cdf(double x);
double std_normal_sf(double x);

// Standard normal quantile (Wichura-style rational fits), p in (0,1).
// Throws std::invalid_argument outside the open interval.
double std_normal_quantile(double p);

// Exponent k of the integrand y^k exp(-y^2/2); only k <= 1 yields a
// convergent tail integral at infinity for every t > 0.
class TailOrder {
 public:
  explicit TailOrder(int k);
  static TailOrder for_dimension(int p);  // k = 2 - p, p >= 1
  int k() const noexcept { return k_; }

 private:
  int k_;
};

// Tail integral  integral_t^inf y^k exp(-y^2/2) dy  for t >= 0.
// Closed forms for k = 1, 0; for k <= -1 the integral is computed after the
// substitution u = y^2/2 (which turns it into an incomplete-gamma-type
// integrand with a plain exponential tail). Throws DivergentAtOrigin when
// t = 0 and k <= -1, std::invalid_argument for t < 0.
double gaussian_power_tail(TailOrder order, double t, double tol = 1e-12);

}  // namespace cubenorm::specfun
