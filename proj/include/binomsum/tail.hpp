#pragma once

#include <span>

#include "binomsum/model.hpp"

namespace binomsum {

enum class TailBranch {
  regular,    // Lugannani-Rice with second-order correction
  mean_case,  // |u-hat| below threshold; analytic limit used
  boundary,   // s outside the open interior: exact value
};

struct TailResult {
  std::int64_t s = 0;
  double survival = 0.0;  // P(S >= s), clamped to [0,1]
  TailBranch branch = TailBranch::boundary;
  // diagnostics; meaningful only for the regular branch
  double w_hat = 0.0;
  double u1_hat = 0.0;
  double u2_hat = 0.0;
  double kappa3 = 0.0;
  double kappa4 = 0.0;
};

/// Standard normal CDF via erfc; keeps full relative accuracy deep in the
/// lower tail instead of underflowing to 0.
double std_normal_cdf(double x);
double std_normal_pdf(double x);

/// P(S >= s) by the lattice Lugannani-Rice approximation with second-order
/// correction. s <= 0 and s >= N are exact boundary cases; otherwise the
/// saddlepoint equation is solved at s and the mean-case branch takes over
/// when |u-hat| < 1e-5, where the regular formula cancels catastrophically.
TailResult survival(const BinomialMixture& mix, std::int64_t s);

/// P(S <= q) (lower tail) or P(S > q), evaluated as 1 - survival(q+1) and
/// survival(q+1) respectively; clamped to [0,1] before any log transform.
RealArray cdf_at(const BinomialMixture& mix, std::span<const std::int64_t> q,
                 bool lower_tail = true, bool log_scale = false);
double cdf_at(const BinomialMixture& mix, std::int64_t q, bool lower_tail = true,
              bool log_scale = false);

}  // namespace binomsum
