#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>

#include "cubenorm/errors.hpp"

namespace cubenorm::quadrature {

// Outcome of one adaptive integration. `converged` means the global error
// estimate dropped to max(tol, round-off floor) within the evaluation budget,
// where the round-off floor is 100 eps times the integral of |f|: below that
// level no amount of refinement can improve a double-precision estimate, so
// reaching it counts as success (the estimate still reports the actual
// level). The value and the estimate are returned either way.
struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

// Thrown by callers that cannot proceed on a non-converged result. Carries the
// best estimate so diagnostics can report how close the run got.
class NotConverged : public std::runtime_error {
 public:
  explicit NotConverged(const QuadratureResult& best)
      : std::runtime_error("quadrature did not converge: estimate " +
                           std::to_string(best.value) + " +- " +
                           std::to_string(best.abs_error_estimate) + " after " +
                           std::to_string(best.evaluations) + " evaluations"),
        best_(best) {}
  const QuadratureResult& best() const noexcept { return best_; }

 private:
  QuadratureResult best_;
};

// Asymptotic decay of a semi-infinite integrand, used to pick the truncation
// point so the discarded tail mass is below tol/10.
//   gaussian:    |f(x)| <~ C exp(-(rate * (x - a))^2 / 2)
//   exponential: |f(x)| <~ C exp(-rate * (x - a))
enum class TailDecay { gaussian, exponential };

// Integration problem description. Endpoint hints declare an inverse-square-
// root singularity there; the engine removes it by substitution before any
// interval is refined. For semi-infinite problems `upper` is ignored, the
// right hint must be false, and `tail`/`tail_rate` describe the decay.
struct IntegrandSpec {
  std::function<double(double)> f;
  double lower = 0.0;
  double upper = 0.0;
  bool semi_infinite = false;
  bool left_inverse_sqrt = false;
  bool right_inverse_sqrt = false;
  TailDecay tail = TailDecay::gaussian;
  double tail_rate = 1.0;
};

inline constexpr std::size_t kDefaultEvaluationBudget = 1'000'000;

// Adaptive Gauss-Kronrod (G7,K15) integration of `spec` to absolute tolerance
// `tol` (>= 1e-14). Refinement bisects the interval with the largest error
// estimate first; ties break on position, so results are bit-reproducible.
// Throws std::invalid_argument on a malformed spec and NonFiniteEvaluation if
// the integrand returns NaN/inf at an evaluation point. Non-convergence is
// reported through the result, not thrown.
QuadratureResult integrate(const IntegrandSpec& spec, double tol,
                           std::size_t max_evaluations = kDefaultEvaluationBudget);

// Convenience wrappers over integrate().
QuadratureResult integrate_finite(std::function<double(double)> f, double lower, double upper,
                                  double tol, bool left_inverse_sqrt = false,
                                  bool right_inverse_sqrt = false,
                                  std::size_t max_evaluations = kDefaultEvaluationBudget);

QuadratureResult integrate_semi_infinite(std::function<double(double)> f, double lower, double tol,
                                         TailDecay tail = TailDecay::gaussian,
                                         double tail_rate = 1.0, bool left_inverse_sqrt = false,
                                         std::size_t max_evaluations = kDefaultEvaluationBudget);

}  // namespace cubenorm::quadrature
