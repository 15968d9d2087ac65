#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubenorm/khintchine.hpp"

namespace cubenorm::verify {

// One named comparison: a computed value against its reference, passing when
// |computed - reference| <= threshold.
struct CheckResult {
  std::string name;
  double computed = 0.0;
  double reference = 0.0;
  double abs_error = 0.0;
  double threshold = 0.0;
  bool passed = false;
  // True when the comparison was decided without quadrature (far-tail cells
  // where both sides underflow identically). Reported so readers can tell
  // computed agreement from short-circuited agreement.
  bool trivially_passed = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

// Mixture-vs-closed-form on the 21x21 grid over [-3,3]^2; per-cell threshold
// `tol` (default 1e-8). Cells are evaluated at quadrature tolerance tol/100.
SuiteReport run_mixture_suite(double tol = 1e-8);

// Laplace-transform identity at x1 in {0.25, 0.5, 1, 2, 4}, threshold 1e-10.
SuiteReport run_laplace_suite();

// marginalize_last against the direct density: p=2 against the standard
// normal (threshold 1e-8), p=3 and p=4 against density_p (threshold 1e-6).
SuiteReport run_marginal_suite();

// Posterior normalization at nine points (1e-8), pointwise arcsine law at
// x = 0 on a 64-point grid (aggregated max error, 1e-10), Bayes factor at the
// origin against 2/pi (1e-12).
SuiteReport run_posterior_suite();

// Per-column KS distance (threshold 1.63/sqrt(n)) and the empirical
// max-norm shell probability at a = 1 against the closed-form value
// (threshold 3 binomial standard errors). Requires p >= 1, n >= 1000.
SuiteReport run_sampler_suite(const khintchine::SampleBatch& batch);

// Batch the sampler suite uses when no external sample is supplied.
khintchine::SampleBatch default_sampler_batch(std::uint64_t seed);

}  // namespace cubenorm::verify
