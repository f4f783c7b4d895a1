#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "binomsum/model.hpp"

namespace binomsum {

/// Thrown when a request exceeds the exact-enumeration guard.
class guard_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact reference distribution, trustworthy to ~1e-12 at desk scale.
struct ExactPmf {
  std::int64_t total_trials;  // N; support is 0..N
  RealArray mass;
};

/// Total table entries the convolution recursion may allocate before refusing.
inline constexpr std::int64_t kMaxConvolutionEntries = 1'000'000;

/// Exact pmf of a single Binomial(n, p), by the closed-form expression
/// (log binomial coefficient via lgamma), with exact boundary products.
RealArray binomial_pmf(std::int64_t n, double p);

/// Exact distribution of the mixture sum by pairwise convolution: each
/// component's pmf from the stable log-domain multiplicative recurrence, then
/// folded together one component at a time. O(m N^2) worst case; refuses with
/// guard_error when the tables would exceed kMaxConvolutionEntries.
ExactPmf exact_pmf(const BinomialMixture& mix);

/// Sampling algorithm identifier; bump when the draw procedure changes.
inline constexpr char kSamplerVersion[] =
    "mt19937_64 + 53-bit uniforms; per-component Bernoulli counting (n <= 64) "
    "or CDF inversion (v1)";

/// count independent draws of S, each the sum of one exact binomial draw per
/// component. Deterministic and platform-independent given the seed.
std::vector<std::int64_t> sample(const BinomialMixture& mix, std::int64_t count,
                                 std::uint64_t seed);

/// Relative frequency of each value 0..support_max among the draws.
RealArray empirical_pmf(std::span<const std::int64_t> draws,
                        std::int64_t support_max);

}  // namespace binomsum
