#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <string_view>

namespace cubenorm::khintchine {

// Identifies the exact sampling algorithm; recorded in sample metadata so a
// batch can be reproduced. Bump when any bit of the stream changes.
inline constexpr std::string_view kGeneratorId = "splitmix64-rowblock-v1";

// Draws consumed per row are capped so row counter blocks cannot overlap.
inline constexpr std::uint64_t kRowBlockBits = 20;
inline constexpr std::uint64_t kRowBlockSize = std::uint64_t{1} << kRowBlockBits;

// SplitMix64 stream carved out of one global sequence: row r of seed s starts
// at counter r * 2^20, so rows are structurally disjoint for <= 2^20 draws.
// Rows can therefore be generated in any order (or in parallel) and still
// produce identical output.
class RowRng {
 public:
  static RowRng for_row(std::uint64_t seed, std::uint64_t row);

  std::uint64_t next_u64();
  double next_uniform_open01();  // (0, 1), 53-bit mantissa, endpoints excluded
  double next_uniform_sym();     // (-1, 1), endpoints excluded
  double next_std_normal();      // inversion through std_normal_quantile

 private:
  explicit RowRng(std::uint64_t state) : state_(state) {}
  std::uint64_t state_;
};

// Length of a 3-vector of independent standard normals: a chi_3 draw.
// Consumes exactly three normals from the stream.
double sample_chi3(RowRng& rng);

// n x p matrix of joint draws X_i = Y * U_i with Y ~ chi_3 and U_i iid
// Uniform(-1, 1), plus the metadata needed to reproduce it.
struct SampleBatch {
  Eigen::MatrixXd data;  // n rows, p columns
  std::uint64_t seed = 0;
  std::string generator_id;

  std::int64_t n() const noexcept { return data.rows(); }
  int p() const noexcept { return static_cast<int>(data.cols()); }
};

// Row i uses RowRng::for_row(seed, i): three normals for Y, then p symmetric
// uniforms. Requires n >= 1 and 1 <= p <= 2^20 - 3.
SampleBatch sample_joint(int p, std::int64_t n, std::uint64_t seed);

// Fraction of rows with max_j |X_ij| <= a, a >= 0. Monotone in a.
double empirical_maxnorm_cdf(const SampleBatch& batch, double a);

// Kolmogorov-Smirnov distance between the column's empirical CDF and the
// standard normal CDF:  max_i max{ Phi(x_(i)) - i/n, (i+1)/n - Phi(x_(i)) }.
double ks_statistic(const Eigen::Ref<const Eigen::VectorXd>& column);

}  // namespace cubenorm::khintchine
