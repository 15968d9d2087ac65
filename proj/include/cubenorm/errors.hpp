#pragma once

#include <stdexcept>
#include <string>

namespace cubenorm {

// Correlation parameter hit +-1 where the conditional density is singular.
class SingularCorrelation : public std::domain_error {
 public:
  explicit SingularCorrelation(double rho)
      : std::domain_error("conditional density is singular at rho = " + std::to_string(rho)),
        rho_(rho) {}
  double rho() const noexcept { return rho_; }

 private:
  double rho_;
};

// Tail integral of order k <= -1 evaluated at t = 0, where it diverges.
class DivergentAtOrigin : public std::domain_error {
 public:
  explicit DivergentAtOrigin(int k)
      : std::domain_error("gaussian power tail of order " + std::to_string(k) +
                          " diverges at t = 0"),
        order_(k) {}
  int order() const noexcept { return order_; }

 private:
  int order_;
};

// Exponent profile is constant in rho (x = 0), so no unique minimizer exists.
class UndefinedArgmin : public std::domain_error {
 public:
  UndefinedArgmin() : std::domain_error("exponent profile has no unique minimizer at x = 0") {}
};

// An integrand returned NaN or +-inf at an interior evaluation point.
class NonFiniteEvaluation : public std::runtime_error {
 public:
  explicit NonFiniteEvaluation(double where)
      : std::runtime_error("integrand evaluated to a non-finite value near x = " +
                           std::to_string(where)),
        where_(where) {}
  double where() const noexcept { return where_; }

 private:
  double where_;
};

}  // namespace cubenorm
