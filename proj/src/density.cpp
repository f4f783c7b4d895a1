#include "binomsum/density.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>

namespace binomsum {

namespace detail {

struct PmfCache {
  std::once_flag once;
  std::optional<PmfTable> table;
};

std::shared_ptr<PmfCache> make_pmf_cache() { return std::make_shared<PmfCache>(); }

}  // namespace detail

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // ln(2*pi)

void require_target(const SaddlepointRoot& root, std::int64_t s) {
  if (root.target != static_cast<double>(s)) {
    throw std::invalid_argument("density: root was solved for target " +
                                std::to_string(root.target) + ", not for s = " +
                                std::to_string(s));
  }
}

double log_density_first(const SaddlepointRoot& root) {
  const CgfDerivatives& d = root.root;
  return d.k - d.u * root.target - 0.5 * (kLog2Pi + std::log(d.k2));
}

// 1 + K''''/(8 K''^2) - 5 K'''^2/(24 K''^3); can go negative deep in the tails.
double correction_factor(const CgfDerivatives& d) {
  const double k2sq = d.k2 * d.k2;
  return 1.0 + d.k4 / (8.0 * k2sq) - 5.0 * d.k3 * d.k3 / (24.0 * k2sq * d.k2);
}

double log_density_second(const SaddlepointRoot& root) {
  const double factor = correction_factor(root.root);
  if (!(factor > 0.0)) return -std::numeric_limits<double>::infinity();
  return log_density_first(root) + std::log(factor);
}

}  // namespace

std::pair<double, double> boundary_masses(const BinomialMixture& mix) {
  // Base-2 logs keep power-of-two probabilities exact: log2 of a dyadic value
  // is an integer, so e.g. p = 0.5 round-trips through exp2 without rounding.
  double log2_zero = 0.0;  // log2 P(S=0) = sum n_i log2(1-p_i)
  double log2_full = 0.0;  // log2 P(S=N) = sum n_i log2(p_i)
  bool zero_impossible = false;
  bool full_impossible = false;
  for (Eigen::Index i = 0; i < mix.component_count(); ++i) {
    const double n = mix.sizes_real()[i];
    const double p = mix.probs()[i];
    if (p == 1.0) {
      zero_impossible = true;
    } else if (p != 0.0) {
      log2_zero += n * std::log2(1.0 - p);
    }
    if (p == 0.0) {
      full_impossible = true;
    } else if (p != 1.0) {
      log2_full += n * std::log2(p);
    }
  }
  return {zero_impossible ? 0.0 : std::exp2(log2_zero),
          full_impossible ? 0.0 : std::exp2(log2_full)};
}

double density_first_order(const SaddlepointRoot& root, std::int64_t s) {
  require_target(root, s);
  return std::exp(log_density_first(root));
}

double density_second_order(const SaddlepointRoot& root, std::int64_t s) {
  require_target(root, s);
  return std::exp(log_density_second(root));
}

PmfTable pmf_table(const BinomialMixture& mix) {
  const std::int64_t n_total = mix.total_trials();
  RealArray mass = RealArray::Zero(n_total + 1);

  const DegenerateSplit split = split_degenerate(mix);
  if (!split.active) {
    mass[split.offset] = 1.0;  // every component deterministic
    return {n_total, std::move(mass)};
  }
  const BinomialMixture& active = *split.active;
  const std::int64_t n_active = active.total_trials();
  const Eigen::Index base = static_cast<Eigen::Index>(split.offset);
  const auto [mass_zero, mass_full] = boundary_masses(active);
  mass[base] = mass_zero;
  mass[base + n_active] = mass_full;

  if (n_active >= 2) {
    // u-hat(s) is increasing in s, so each interior solve warm-starts from
    // its left neighbor's root. Everything stays in log space until the
    // final renormalization.
    RealArray log_interior(n_active - 1);
    std::optional<double> warm;
    for (std::int64_t s = 1; s < n_active; ++s) {
      const SaddlepointRoot root =
          solve_saddlepoint(active, static_cast<double>(s), warm);
      warm = root.root.u;
      log_interior[s - 1] = log_density_second(root);
    }
    const double shift = log_interior.maxCoeff();
    if (!std::isfinite(shift)) {
      throw std::runtime_error("pmf_table: every interior mass vanished");
    }
    const RealArray weights = (log_interior - shift).exp();
    const double interior_total = std::max(1.0 - mass_zero - mass_full, 0.0);
    mass.segment(base + 1, n_active - 1) = interior_total * (weights / weights.sum());
  }
  return {n_total, std::move(mass)};
}

const PmfTable& cached_pmf_table(const BinomialMixture& mix) {
  detail::PmfCache& cache = *mix.pmf_cache();
  std::call_once(cache.once, [&] { cache.table = pmf_table(mix); });
  return *cache.table;
}

RealArray pmf_at(const BinomialMixture& mix, std::span<const std::int64_t> x,
                 bool log_scale) {
  const PmfTable& table = cached_pmf_table(mix);
  RealArray out(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::int64_t xi = x[i];
    const double value = (xi >= 0 && xi <= table.total_trials)
                             ? table.mass[static_cast<Eigen::Index>(xi)]
                             : 0.0;
    out[static_cast<Eigen::Index>(i)] = log_scale ? std::log(value) : value;
  }
  return out;
}

double pmf_at(const BinomialMixture& mix, std::int64_t x, bool log_scale) {
  return pmf_at(mix, std::span<const std::int64_t>(&x, 1), log_scale)[0];
}

}  // namespace binomsum
