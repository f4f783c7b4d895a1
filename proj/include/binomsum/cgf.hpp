#pragma once

#include "binomsum/model.hpp"

namespace binomsum {

/// K(u) and its first four derivatives at one evaluation point.
///
/// At u = 0: k = 0, k1 = mean, k2 = variance. k2 > 0 everywhere for a
/// non-degenerate mixture (K is strictly convex).
struct CgfDerivatives {
  double u;
  double k;   // K(u)
  double k1;  // K'(u)
  double k2;  // K''(u)
  double k3;  // K'''(u)
  double k4;  // K''''(u)
};

/// Evaluates the cumulant generating function K(u) = sum n_i ln(1 - p_i + p_i e^u)
/// of the mixture and its derivatives through fourth order.
///
/// All five values come from one pass over the tilted success probabilities
/// q_i(u) = p_i e^u / (1 - p_i + p_i e^u), computed in a logistic form that
/// saturates to 0 or 1 without overflow for large |u|.
///
/// Requires every p_i strictly inside (0,1); split degenerate components first.
CgfDerivatives eval_cgf(const BinomialMixture& mix, double u);

}  // namespace binomsum
