#include "cubenorm/khintchine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cubenorm/specfun.hpp"

namespace cubenorm::khintchine {
namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 output stage (Stafford mix 13).
std::uint64_t mix13(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

RowRng RowRng::for_row(std::uint64_t seed, std::uint64_t row) {
  // Row r occupies counters [r*2^20, (r+1)*2^20) of the seed's global
  // SplitMix64 sequence, so rows never share draws.
  return RowRng(mix13(seed) + (row << kRowBlockBits) * kGamma);
}

std::uint64_t RowRng::next_u64() {
  state_ += kGamma;
  return mix13(state_);
}

double RowRng::next_uniform_open01() {
  // 53 mantissa bits centered in (0,1); never returns an endpoint.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RowRng::next_uniform_sym() { return 2.0 * next_uniform_open01() - 1.0; }

double RowRng::next_std_normal() { return specfun::std_normal_quantile(next_uniform_open01()); }

double sample_chi3(RowRng& rng) {
  const double z1 = rng.next_std_normal();
  const double z2 = rng.next_std_normal();
  const double z3 = rng.next_std_normal();
  return std::sqrt(z1 * z1 + z2 * z2 + z3 * z3);
}

SampleBatch sample_joint(int p, std::int64_t n, std::uint64_t seed) {
  if (p < 1) throw std::invalid_argument("sample_joint: p must be >= 1");
  if (static_cast<std::uint64_t>(p) + 3 > kRowBlockSize)
    throw std::invalid_argument("sample_joint: p exceeds the per-row draw budget (2^20 - 3)");
  if (n < 1) throw std::invalid_argument("sample_joint: n must be >= 1");
  if (n > (std::int64_t{1} << 40))
    throw std::invalid_argument("sample_joint: n exceeds the row budget (2^40)");
  SampleBatch batch;
  batch.data.resize(n, p);
  batch.seed = seed;
  batch.generator_id = std::string(kGeneratorId);
  for (std::int64_t i = 0; i < n; ++i) {
    RowRng rng = RowRng::for_row(seed, static_cast<std::uint64_t>(i));
    const double y = sample_chi3(rng);
    for (int j = 0; j < p; ++j) batch.data(i, j) = y * rng.next_uniform_sym();
  }
  return batch;
}

double empirical_maxnorm_cdf(const SampleBatch& batch, double a) {
  if (!std::isfinite(a) || a < 0.0)
    throw std::invalid_argument("empirical_maxnorm_cdf: a must be a nonnegative real");
  const std::int64_t n = batch.n();
  if (n < 1) throw std::invalid_argument("empirical_maxnorm_cdf: batch is empty");
  std::int64_t count = 0;
  for (std::int64_t i = 0; i < n; ++i)
    if (batch.data.row(i).cwiseAbs().maxCoeff() <= a) ++count;
  return static_cast<double>(count) / static_cast<double>(n);
}

double ks_statistic(const Eigen::Ref<const Eigen::VectorXd>& column) {
  const auto n = column.size();
  if (n < 1) throw std::invalid_argument("ks_statistic: column must be nonempty");
  std::vector<double> sorted(column.data(), column.data() + n);
  std::sort(sorted.begin(), sorted.end());
  const double inv_n = 1.0 / static_cast<double>(n);
  double d = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double cdf = specfun::std_normal_cdf(sorted[static_cast<std::size_t>(i)]);
    const double below = cdf - static_cast<double>(i) * inv_n;
    const double above = static_cast<double>(i + 1) * inv_n - cdf;
    d = std::max(d, std::max(below, above));
  }
  return d;
}

}  // namespace cubenorm::khintchine
