#pragma once

// Test-side oracles, deliberately independent of the library's quadrature:
// long-double composite Simpson plus simple finite differences. Slow and
// simple on purpose.

#include <cmath>
#include <functional>

namespace oracle {

using Fn = std::function<long double(long double)>;

// Composite Simpson with n (even) panels on [a, b], long double accumulation.
inline long double simpson(const Fn& f, long double a, long double b, int n) {
  if (n % 2 != 0) ++n;
  const long double h = (b - a) / n;
  long double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 ? 4.0L : 2.0L);
  return sum * h / 3.0L;
}

// Panel-doubling Simpson until successive values agree to `tol` (or the panel
// count hits 2^21). Assumes a smooth integrand.
inline long double simpson_auto(const Fn& f, long double a, long double b,
                                long double tol = 1e-13L) {
  int n = 64;
  long double prev = simpson(f, a, b, n);
  while (n < (1 << 21)) {
    n *= 2;
    const long double next = simpson(f, a, b, n);
    if (std::fabs(next - prev) <= tol * (1.0L + std::fabs(next))) return next;
    prev = next;
  }
  return prev;
}

// Central first derivative, O(h^2).
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Central second derivative, O(h^2).
inline double second_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace oracle
