#pragma once

#include <span>
#include <vector>

#include "binomsum/model.hpp"

namespace binomsum {

/// One quantile request. p is interpreted after decoding: exponentiated when
/// log_scale, complemented when !lower_tail; the decoded value must land in [0,1].
struct QuantileQuery {
  double p = 0.0;
  bool lower_tail = true;
  bool log_scale = false;
};

/// Smallest integer s in [0, N] with P(S <= s) >= p (left-continuous inverse
/// of the saddlepoint CDF), found by binary search: O(log N) CDF evaluations.
std::int64_t quantile(const BinomialMixture& mix, QuantileQuery query);
std::vector<std::int64_t> quantile(const BinomialMixture& mix,
                                   std::span<const QuantileQuery> queries);

/// Random variates of S. Draws from the exact distribution (delegates to
/// sample()); the approximation is never involved in generation.
std::vector<std::int64_t> random(const BinomialMixture& mix, std::int64_t count,
                                 std::uint64_t seed);

}  // namespace binomsum
