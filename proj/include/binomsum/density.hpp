#pragma once

#include <span>
#include <utility>

#include "binomsum/solver.hpp"

namespace binomsum {

/// Full-support probability table. The boundary masses are the exact products
/// P(S=0) = prod (1-p_i)^{n_i} and P(S=N) = prod p_i^{n_i}; interior masses
/// are second-order saddlepoint values renormalized to absorb the remaining
/// probability, so the table sums to 1.
struct PmfTable {
  std::int64_t total_trials;  // N; support is 0..N
  RealArray mass;             // length N + 1
};

/// (P(S=0), P(S=N)), each computed by summing base-2 logs and exponentiating,
/// skipping degenerate components so that p_i in {0,1} yields exact 0/1 factors.
std::pair<double, double> boundary_masses(const BinomialMixture& mix);

/// First-order saddlepoint density exp(K(u) - u s) / sqrt(2 pi K''(u)),
/// assembled in log space. root must have been solved for target s.
double density_first_order(const SaddlepointRoot& root, std::int64_t s);

/// Second-order density: the first-order value times
/// 1 + K''''/(8 K''^2) - 5 K'''^2/(24 K''^3), clamped below at 0 (the
/// correction can overshoot negative in extreme tails).
double density_second_order(const SaddlepointRoot& root, std::int64_t s);

/// Builds the renormalized second-order table over the full support 0..N.
/// One saddlepoint solve per interior point, warm-started from its neighbor.
PmfTable pmf_table(const BinomialMixture& mix);

/// Table lookups; x outside [0, N] yields 0 (-inf when log_scale). The table
/// is built once per mixture and cached on the mixture handle.
RealArray pmf_at(const BinomialMixture& mix, std::span<const std::int64_t> x,
                 bool log_scale = false);
double pmf_at(const BinomialMixture& mix, std::int64_t x, bool log_scale = false);

/// The memoized table behind pmf_at. Thread-safe; built at most once.
const PmfTable& cached_pmf_table(const BinomialMixture& mix);

}  // namespace binomsum
