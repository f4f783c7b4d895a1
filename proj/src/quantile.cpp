#include "binomsum/quantile.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "binomsum/oracle.hpp"
#include "binomsum/tail.hpp"

namespace binomsum {

std::int64_t quantile(const BinomialMixture& mix, QuantileQuery query) {
  double p = query.log_scale ? std::exp(query.p) : query.p;
  if (!query.lower_tail) p = 1.0 - p;
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("quantile: decoded probability " +
                                std::to_string(p) + " outside [0,1]");
  }
  const std::int64_t n_total = mix.total_trials();
  if (p <= 0.0) return 0;
  if (p >= 1.0) return n_total;

  // Smallest s with cdf(s) >= p; cdf(N) = 1 keeps the invariant at hi.
  std::int64_t lo = 0;
  std::int64_t hi = n_total;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (cdf_at(mix, mid) >= p) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::vector<std::int64_t> quantile(const BinomialMixture& mix,
                                   std::span<const QuantileQuery> queries) {
  std::vector<std::int64_t> out;
  out.reserve(queries.size());
  for (const QuantileQuery& q : queries) out.push_back(quantile(mix, q));
  return out;
}

std::vector<std::int64_t> random(const BinomialMixture& mix, std::int64_t count,
                                 std::uint64_t seed) {
  return sample(mix, count, seed);
}

}  // namespace binomsum
