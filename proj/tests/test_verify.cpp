#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "cubenorm/verify.hpp"
#include "doctest.h"

using namespace cubenorm;
namespace vf = cubenorm::verify;

TEST_CASE("mixture suite: one check per cell of the 21x21 grid, all green") {
  const auto rep = vf::run_mixture_suite(1e-8);
  CHECK(rep.suite == "mixture");
  REQUIRE(rep.checks.size() == 441);
  CHECK(rep.all_passed());
  for (const auto& c : rep.checks) {
    CHECK(c.passed);
    CHECK(c.abs_error <= c.threshold);
    CHECK_FALSE(c.name.empty());
  }
  // [-3, 3] stays inside the short-circuit radius: everything is computed.
  for (const auto& c : rep.checks) CHECK_FALSE(c.trivially_passed);
}

TEST_CASE("laplace suite") {
  const auto rep = vf::run_laplace_suite();
  CHECK(rep.suite == "laplace");
  REQUIRE(rep.checks.size() == 5);
  CHECK(rep.all_passed());
  for (const auto& c : rep.checks) CHECK(c.threshold == 1e-10);
}

TEST_CASE("marginal suite covers p = 2, 3, 4") {
  const auto rep = vf::run_marginal_suite();
  CHECK(rep.suite == "marginal");
  REQUIRE(rep.checks.size() == 30);
  CHECK(rep.all_passed());
}

TEST_CASE("posterior suite") {
  const auto rep = vf::run_posterior_suite();
  CHECK(rep.suite == "posterior");
  REQUIRE(rep.checks.size() == 11);
  CHECK(rep.all_passed());
}

TEST_CASE("sampler suite on the default batch") {
  const auto batch = vf::default_sampler_batch(1);
  CHECK(batch.n() == 200000);
  CHECK(batch.p() == 2);
  const auto rep = vf::run_sampler_suite(batch);
  CHECK(rep.suite == "sampler");
  REQUIRE(rep.checks.size() == 3);
  CHECK(rep.all_passed());

  // Sanity of the recorded numbers: KS distances are small but nonzero.
  CHECK(rep.checks[0].computed > 0.0);
  CHECK(rep.checks[0].computed < 0.0037);
}

TEST_CASE("sampler suite rejects undersized batches") {
  const auto tiny = khintchine::sample_joint(2, 10, 1);
  CHECK_THROWS_AS((void)vf::run_sampler_suite(tiny), std::invalid_argument);
}

TEST_CASE("a broken batch fails the suite rather than throwing") {
  auto batch = vf::default_sampler_batch(1);
  batch.data.col(0).setConstant(0.123);  // degenerate column
  const auto rep = vf::run_sampler_suite(batch);
  CHECK_FALSE(rep.all_passed());
}
