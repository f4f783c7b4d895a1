#pragma once

#include <optional>

#include "binomsum/cgf.hpp"

namespace binomsum {

/// Solution of the saddlepoint equation K'(u) = target.
struct SaddlepointRoot {
  double target;
  CgfDerivatives root;  // evaluated at the solution; root.u is u-hat
  int iterations;
  double residual;  // |K'(u-hat) - target|
};

/// Residual tolerance used by solve_saddlepoint: max(1e-12 * N, 1e-12).
double saddlepoint_tolerance(const BinomialMixture& mix);

/// Solves K'(u) = target for the unique real root.
///
/// K' is strictly increasing with range (0, N), so a root exists for any
/// target strictly inside that interval; targets within 1e-9 of an endpoint
/// are rejected (boundary masses are handled exactly elsewhere). Newton steps
/// are safeguarded by a maintained bracket with bisection fallback. A known
/// nearby root may be passed as a warm start.
SaddlepointRoot solve_saddlepoint(const BinomialMixture& mix, double target,
                                  std::optional<double> warm_start = std::nullopt);

}  // namespace binomsum
