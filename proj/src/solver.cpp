#include "binomsum/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace binomsum {

namespace {
constexpr int kMaxIterations = 200;
constexpr double kEndpointMargin = 1e-9;
}  // namespace

double saddlepoint_tolerance(const BinomialMixture& mix) {
  return std::max(1e-12 * static_cast<double>(mix.total_trials()), 1e-12);
}

SaddlepointRoot solve_saddlepoint(const BinomialMixture& mix, double target,
                                  std::optional<double> warm_start) {
  const double n_total = static_cast<double>(mix.total_trials());
  if (!(target >= kEndpointMargin && target <= n_total - kEndpointMargin)) {
    throw std::invalid_argument(
        "solve_saddlepoint: target " + std::to_string(target) +
        " must lie strictly inside (0, " + std::to_string(n_total) + ")");
  }
  const double tol = saddlepoint_tolerance(mix);

  // Bracket [lo, hi] with K'(lo) <= target <= K'(hi), grown by step doubling
  // from the anchor. K' -> 0 and N at the ends of the real line, so this
  // terminates for any interior target.
  const double anchor = warm_start.value_or(0.0);
  CgfDerivatives at_anchor = eval_cgf(mix, anchor);
  if (std::abs(at_anchor.k1 - target) <= tol) {
    return {target, at_anchor, 0, std::abs(at_anchor.k1 - target)};
  }
  double lo = anchor;
  double hi = anchor;
  double step = 1.0;
  if (at_anchor.k1 < target) {
    for (int i = 0;; ++i) {
      if (i >= kMaxIterations) {
        throw std::runtime_error("solve_saddlepoint: bracket expansion failed");
      }
      hi = anchor + step;
      if (eval_cgf(mix, hi).k1 >= target) break;
      lo = hi;
      step *= 2.0;
    }
  } else {
    for (int i = 0;; ++i) {
      if (i >= kMaxIterations) {
        throw std::runtime_error("solve_saddlepoint: bracket expansion failed");
      }
      lo = anchor - step;
      if (eval_cgf(mix, lo).k1 <= target) break;
      hi = lo;
      step *= 2.0;
    }
  }

  // Newton from the warm start or from the one-step Gaussian guess
  // (t - mean)/variance, bisecting whenever a step leaves the bracket.
  double u0;
  if (warm_start) {
    u0 = std::clamp(anchor, lo, hi);
  } else {
    u0 = std::clamp((target - at_anchor.k1) / at_anchor.k2, lo, hi);
  }
  CgfDerivatives cur = eval_cgf(mix, u0);
  for (int iter = 1; iter <= kMaxIterations; ++iter) {
    const double residual = cur.k1 - target;
    if (std::abs(residual) <= tol) {
      return {target, cur, iter, std::abs(residual)};
    }
    if (residual > 0.0) {
      hi = cur.u;
    } else {
      lo = cur.u;
    }
    double next = cur.u - residual / cur.k2;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    if (next == cur.u) {  // stalled at double resolution
      next = 0.5 * (lo + hi);
      if (next == cur.u) break;
    }
    cur = eval_cgf(mix, next);
  }
  throw std::runtime_error(
      "solve_saddlepoint: iteration budget exhausted (numerics bug); target " +
      std::to_string(target));
}

}  // namespace binomsum
