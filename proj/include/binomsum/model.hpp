#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

namespace binomsum {

using TrialArray = Eigen::Array<std::int64_t, Eigen::Dynamic, 1>;
using RealArray = Eigen::ArrayXd;

namespace detail {
struct PmfCache;
std::shared_ptr<PmfCache> make_pmf_cache();  // defined in density.cpp
}  // namespace detail

/// Sum of independent binomial components: S = sum_i Binomial(n_i, p_i).
///
/// Construction validates and broadcasts the parameter vectors: a length-1
/// sizes or probs argument is repeated to the other argument's length; any
/// other length mismatch is an error. Instances are immutable and cheap to
/// copy; copies share the lazily built pmf table cache (see pmf_at).
class BinomialMixture {
 public:
  BinomialMixture(const std::vector<std::int64_t>& sizes,
                  const std::vector<double>& probs);

  /// Accepts any integer-valued / real-valued Eigen array expressions.
  template <typename SizeDerived, typename ProbDerived>
  BinomialMixture(const Eigen::ArrayBase<SizeDerived>& sizes,
                  const Eigen::ArrayBase<ProbDerived>& probs)
      : sizes_(sizes.derived().template cast<std::int64_t>()),
        probs_(probs.derived().template cast<double>()) {
    static_assert(std::is_integral_v<typename SizeDerived::Scalar>,
                  "trial counts must be integers");
    finalize();
  }

  const TrialArray& sizes() const { return sizes_; }
  const RealArray& probs() const { return probs_; }

  /// Trial counts as doubles, for coefficient-wise array math.
  const RealArray& sizes_real() const { return sizes_real_; }

  Eigen::Index component_count() const { return sizes_.size(); }

  /// N = sum_i n_i, the top of the support.
  std::int64_t total_trials() const { return total_trials_; }

  /// Internal handle used by pmf_at to memoize the full table.
  const std::shared_ptr<detail::PmfCache>& pmf_cache() const { return cache_; }

 private:
  void finalize();  // broadcast, validate, derive cached fields

  TrialArray sizes_;
  RealArray probs_;
  RealArray sizes_real_;
  std::int64_t total_trials_ = 0;
  std::shared_ptr<detail::PmfCache> cache_;
};

double mean(const BinomialMixture& mix);      // sum n_i p_i
double variance(const BinomialMixture& mix);  // sum n_i p_i (1-p_i)

/// Mixture with the components at p_i in {0,1} factored out, so the
/// saddlepoint machinery only ever sees probabilities strictly inside (0,1):
/// S = offset + S_active, where p_i = 1 components contribute their trials
/// deterministically and p_i = 0 components contribute nothing.
struct DegenerateSplit {
  std::optional<BinomialMixture> active;  // absent when every component is degenerate
  std::int64_t offset = 0;                // trials from p_i = 1 components
};

DegenerateSplit split_degenerate(const BinomialMixture& mix);

}  // namespace binomsum
