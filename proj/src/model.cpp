#include "binomsum/model.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace binomsum {

namespace {

void broadcast_scalar(TrialArray& sizes, RealArray& probs) {
  if (sizes.size() == probs.size()) return;
  if (sizes.size() == 1) {
    sizes = TrialArray::Constant(probs.size(), sizes[0]);
  } else if (probs.size() == 1) {
    probs = RealArray::Constant(sizes.size(), probs[0]);
  } else {
    throw std::invalid_argument(
        "BinomialMixture: sizes has length " + std::to_string(sizes.size()) +
        " but probs has length " + std::to_string(probs.size()) +
        " (only a length-1 argument is broadcast)");
  }
}

}  // namespace

BinomialMixture::BinomialMixture(const std::vector<std::int64_t>& sizes,
                                 const std::vector<double>& probs)
    : sizes_(Eigen::Map<const TrialArray>(sizes.data(),
                                          static_cast<Eigen::Index>(sizes.size()))),
      probs_(Eigen::Map<const RealArray>(probs.data(),
                                         static_cast<Eigen::Index>(probs.size()))) {
  finalize();
}

void BinomialMixture::finalize() {
  if (sizes_.size() == 0 || probs_.size() == 0) {
    throw std::invalid_argument("BinomialMixture: sizes and probs must be nonempty");
  }
  broadcast_scalar(sizes_, probs_);
  for (Eigen::Index i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] < 1) {
      throw std::invalid_argument("BinomialMixture: trial count n_" +
                                  std::to_string(i) + " = " +
                                  std::to_string(sizes_[i]) + " must be >= 1");
    }
    const double p = probs_[i];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("BinomialMixture: probability p_" +
                                  std::to_string(i) + " = " + std::to_string(p) +
                                  " must lie in [0,1]");
    }
    if (sizes_[i] > std::numeric_limits<std::int64_t>::max() - total_trials_) {
      throw std::invalid_argument("BinomialMixture: total trial count overflows");
    }
    total_trials_ += sizes_[i];
  }
  sizes_real_ = sizes_.cast<double>();
  cache_ = detail::make_pmf_cache();
}

double mean(const BinomialMixture& mix) {
  return (mix.sizes_real() * mix.probs()).sum();
}

double variance(const BinomialMixture& mix) {
  return (mix.sizes_real() * mix.probs() * (1.0 - mix.probs())).sum();
}

DegenerateSplit split_degenerate(const BinomialMixture& mix) {
  DegenerateSplit out;
  std::vector<std::int64_t> sizes;
  std::vector<double> probs;
  sizes.reserve(mix.component_count());
  probs.reserve(mix.component_count());
  for (Eigen::Index i = 0; i < mix.component_count(); ++i) {
    const double p = mix.probs()[i];
    if (p == 1.0) {
      out.offset += mix.sizes()[i];
    } else if (p > 0.0) {
      sizes.push_back(mix.sizes()[i]);
      probs.push_back(p);
    }
    // p == 0 contributes nothing
  }
  if (!sizes.empty()) out.active.emplace(sizes, probs);
  return out;
}

}  // namespace binomsum
