#include "binomsum/tail.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "binomsum/density.hpp"
#include "binomsum/solver.hpp"

namespace binomsum {

namespace {

constexpr double kMeanCaseThreshold = 1e-5;
// Width, in units of u-hat * sqrt(K''), of the band around the mean where the
// second-order terms (~1/u2^3) amplify double roundoff beyond the method's
// own accuracy. Inside it the formula is evaluated at the band edges, where
// it is well conditioned, and interpolated linearly in the target.
constexpr double kNoiseBandWidth = 1e-2;
// Reflect when the top of the support is this close to the mean (in standard
// deviations). The approximation implicitly integrates an unbounded tail;
// past-the-edge Gaussian mass ~Phi(-4) is where that starts to bite at the
// accuracy scale of the mid-range values.
constexpr double kShortTopSpanSigmas = 4.0;
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

TailResult boundary(std::int64_t s, double value) {
  TailResult r;
  r.s = s;
  r.survival = value;
  r.branch = TailBranch::boundary;
  return r;
}

// Eq. 11 plus the Eq. 12 correction for a solved root; survival unclamped.
TailResult regular_tail(const SaddlepointRoot& root) {
  const CgfDerivatives& d = root.root;
  double radicand = 2.0 * d.u * d.k1 - 2.0 * d.k;  // nonnegative by convexity
  if (radicand < 0.0) {
    if (radicand <= -1e-12) {
      throw std::runtime_error("survival: negative w radicand (numerics bug)");
    }
    radicand = 0.0;
  }
  if (radicand == 0.0) {
    throw std::runtime_error("survival: vanishing w away from the mean (numerics bug)");
  }

  const double w = std::copysign(std::sqrt(radicand), d.u);
  const double sqrt_k2 = std::sqrt(d.k2);
  const double u1 = -std::expm1(-d.u) * sqrt_k2;  // (1 - e^-u) sqrt(K'')
  const double base = 1.0 - std_normal_cdf(w) -
                      std_normal_pdf(w) * (1.0 / w - 1.0 / u1);

  const double u2 = d.u * sqrt_k2;
  const double kappa3 = d.k3 / (d.k2 * sqrt_k2);
  const double kappa4 = d.k4 / (d.k2 * d.k2);
  const double correction = (kappa4 / 8.0 - 5.0 * kappa3 * kappa3 / 24.0) / u2 -
                            1.0 / (u2 * u2 * u2) - kappa3 / (2.0 * u2 * u2) +
                            1.0 / (w * w * w);

  TailResult r;
  r.survival = base - std_normal_pdf(w) * correction;
  r.branch = TailBranch::regular;
  r.w_hat = w;
  r.u1_hat = u1;
  r.u2_hat = u2;
  r.kappa3 = kappa3;
  r.kappa4 = kappa4;
  return r;
}

}  // namespace

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double std_normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

TailResult survival(const BinomialMixture& mix, std::int64_t s) {
  if (s <= 0) return boundary(s, 1.0);
  if (s > mix.total_trials()) return boundary(s, 0.0);

  const DegenerateSplit split = split_degenerate(mix);
  const std::int64_t s_active = s - split.offset;
  if (s_active <= 0) return boundary(s, 1.0);
  if (!split.active) return boundary(s, 0.0);  // point mass at offset
  const BinomialMixture& active = *split.active;
  const std::int64_t n_active = active.total_trials();
  if (s_active > n_active) return boundary(s, 0.0);
  if (s_active == n_active) return boundary(s, boundary_masses(active).second);
  // P(S >= 1) = 1 - P(S = 0): exact like the top boundary.
  if (s_active == 1) return boundary(s, 1.0 - boundary_masses(active).first);

  const double mu = mean(active);
  const double upper_span = static_cast<double>(n_active) - mu;
  if (upper_span < kShortTopSpanSigmas * std::sqrt(variance(active)) &&
      mu > upper_span) {
    // The support ends just above the mean, so every direct target sits next
    // to the edge where the implicit tail is badly wrong. P(S >= s) =
    // 1 - P(N - S >= N - s + 1) moves the evaluation onto the mirrored
    // mixture's long side. The mirror's top span is mu > upper_span, so it
    // never reflects back.
    const BinomialMixture mirror(active.sizes(), RealArray(1.0 - active.probs()));
    TailResult r = survival(mirror, n_active - s_active + 1);
    r.s = s;
    r.survival = clamp01(1.0 - r.survival);
    return r;
  }

  const SaddlepointRoot root =
      solve_saddlepoint(active, static_cast<double>(s_active));
  const CgfDerivatives& d = root.root;

  if (std::abs(d.u) < kMeanCaseThreshold) {
    // Analytic limit of the formula as u-hat -> 0; the regular branch's
    // 1/w - 1/u1 cancels catastrophically here.
    const CgfDerivatives d0 = eval_cgf(active, 0.0);
    const double sqrt_k2 = std::sqrt(d0.k2);
    const double value =
        0.5 - kInvSqrt2Pi * (d0.k3 / (6.0 * d0.k2 * sqrt_k2) - 1.0 / (2.0 * sqrt_k2));
    TailResult r;
    r.s = s;
    r.survival = clamp01(value);
    r.branch = TailBranch::mean_case;
    return r;
  }

  if (std::abs(d.u) * std::sqrt(d.k2) < kNoiseBandWidth) {
    // Inside the roundoff band: evaluate at both band edges and interpolate.
    // The edge targets stay inside (0, N): sigma^2 <= min(mu, N - mu), so a
    // 0.01-sigma step cannot cross an endpoint the integer target hasn't.
    const double sigma = std::sqrt(variance(active));
    const double mu = mean(active);
    const double t_lo = mu - kNoiseBandWidth * sigma;
    const double t_hi = mu + kNoiseBandWidth * sigma;
    const TailResult lo = regular_tail(solve_saddlepoint(active, t_lo));
    const TailResult hi = regular_tail(solve_saddlepoint(active, t_hi));
    const double frac = (static_cast<double>(s_active) - t_lo) / (t_hi - t_lo);
    TailResult r = frac < 0.5 ? lo : hi;
    r.s = s;
    r.survival = clamp01(lo.survival + frac * (hi.survival - lo.survival));
    return r;
  }

  TailResult r = regular_tail(root);
  r.s = s;
  r.survival = clamp01(r.survival);
  return r;
}

double cdf_at(const BinomialMixture& mix, std::int64_t q, bool lower_tail,
              bool log_scale) {
  double upper;
  if (q < 0) {
    upper = 1.0;
  } else if (q >= mix.total_trials()) {
    upper = 0.0;
  } else {
    upper = survival(mix, q + 1).survival;
  }
  const double value = clamp01(lower_tail ? 1.0 - upper : upper);
  return log_scale ? std::log(value) : value;
}

RealArray cdf_at(const BinomialMixture& mix, std::span<const std::int64_t> q,
                 bool lower_tail, bool log_scale) {
  RealArray out(static_cast<Eigen::Index>(q.size()));
  for (std::size_t i = 0; i < q.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = cdf_at(mix, q[i], lower_tail, log_scale);
  }
  return out;
}

}  // namespace binomsum
