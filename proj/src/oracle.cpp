#include "binomsum/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace binomsum {

namespace {

// Largest component size drawn by counting Bernoulli trials; bigger
// components use one uniform and a CDF lookup per draw.
constexpr std::int64_t kCountingCutoff = 64;

// 53-bit uniform in [0,1); fully specified, unlike the distribution adaptors.
double uniform53(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Exact single-component pmf by the multiplicative recurrence
// P(k+1) = P(k) (n-k) p / ((k+1)(1-p)), carried in log space so that
// P(0) = (1-p)^n may underflow without poisoning the rest of the table.
RealArray component_pmf(std::int64_t n, double p) {
  RealArray out = RealArray::Zero(n + 1);
  if (p <= 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (p >= 1.0) {
    out[n] = 1.0;
    return out;
  }
  double log_mass = static_cast<double>(n) * std::log1p(-p);
  const double log_odds = std::log(p) - std::log1p(-p);
  out[0] = std::exp(log_mass);
  for (std::int64_t k = 0; k < n; ++k) {
    log_mass += std::log(static_cast<double>(n - k)) -
                std::log(static_cast<double>(k + 1)) + log_odds;
    out[k + 1] = std::exp(log_mass);
  }
  return out;
}

RealArray convolve(const RealArray& a, const RealArray& b) {
  RealArray out = RealArray::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

}  // namespace

RealArray binomial_pmf(std::int64_t n, double p) {
  if (n < 1) throw std::invalid_argument("binomial_pmf: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("binomial_pmf: p must lie in [0,1]");
  }
  RealArray out = RealArray::Zero(n + 1);
  if (p == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (p == 1.0) {
    out[n] = 1.0;
    return out;
  }
  const double nd = static_cast<double>(n);
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double lg_n1 = std::lgamma(nd + 1.0);
  for (std::int64_t k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double log_coef =
        lg_n1 - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
    out[k] = std::exp(log_coef + kd * log_p + (nd - kd) * log_q);
  }
  // boundary products in base-2 logs, matching boundary_masses() exactly
  out[0] = std::exp2(nd * std::log2(1.0 - p));
  out[n] = std::exp2(nd * std::log2(p));
  return out;
}

ExactPmf exact_pmf(const BinomialMixture& mix) {
  // Entry count for every table the recursion will allocate: the component
  // pmfs plus each partial convolution.
  std::int64_t entries = 0;
  std::int64_t partial = 0;
  for (Eigen::Index i = 0; i < mix.component_count(); ++i) {
    entries += mix.sizes()[i] + 1;
    partial += mix.sizes()[i];
    if (i > 0) entries += partial + 1;
    if (entries > kMaxConvolutionEntries) {
      throw guard_error(
          "exact_pmf: request needs more than " +
          std::to_string(kMaxConvolutionEntries) +
          " table entries (limit kMaxConvolutionEntries); total trials " +
          std::to_string(mix.total_trials()));
    }
  }

  RealArray acc = component_pmf(mix.sizes()[0], mix.probs()[0]);
  for (Eigen::Index i = 1; i < mix.component_count(); ++i) {
    acc = convolve(acc, component_pmf(mix.sizes()[i], mix.probs()[i]));
  }
  return {mix.total_trials(), std::move(acc)};
}

std::vector<std::int64_t> sample(const BinomialMixture& mix, std::int64_t count,
                                 std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample: count must be >= 1");

  // Per-component CDF tables for the inversion path.
  std::vector<std::vector<double>> cdfs(mix.component_count());
  for (Eigen::Index i = 0; i < mix.component_count(); ++i) {
    const std::int64_t n = mix.sizes()[i];
    if (n > kCountingCutoff) {
      const RealArray pmf = component_pmf(n, mix.probs()[i]);
      std::vector<double>& cdf = cdfs[i];
      cdf.resize(pmf.size());
      double acc = 0.0;
      for (Eigen::Index k = 0; k < pmf.size(); ++k) {
        acc += pmf[k];
        cdf[k] = acc;
      }
    }
  }

  std::mt19937_64 gen(seed);
  std::vector<std::int64_t> draws(count);
  for (std::int64_t d = 0; d < count; ++d) {
    std::int64_t total = 0;
    for (Eigen::Index i = 0; i < mix.component_count(); ++i) {
      const std::int64_t n = mix.sizes()[i];
      const double p = mix.probs()[i];
      if (n <= kCountingCutoff) {
        for (std::int64_t t = 0; t < n; ++t) {
          total += uniform53(gen) < p ? 1 : 0;
        }
      } else {
        const std::vector<double>& cdf = cdfs[i];
        const double u = uniform53(gen);
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        total += std::min<std::int64_t>(it - cdf.begin(), n);
      }
    }
    draws[d] = total;
  }
  return draws;
}

RealArray empirical_pmf(std::span<const std::int64_t> draws,
                        std::int64_t support_max) {
  if (draws.empty()) {
    throw std::invalid_argument("empirical_pmf: draws must be nonempty");
  }
  if (support_max < 0) {
    throw std::invalid_argument("empirical_pmf: support_max must be >= 0");
  }
  RealArray out = RealArray::Zero(support_max + 1);
  for (const std::int64_t v : draws) {
    if (v >= 0 && v <= support_max) out[static_cast<Eigen::Index>(v)] += 1.0;
  }
  return out / static_cast<double>(draws.size());
}

}  // namespace binomsum
