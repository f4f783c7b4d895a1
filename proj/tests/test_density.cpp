#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "binomsum/density.hpp"
#include "binomsum/oracle.hpp"
#include "test_util.hpp"

using binomsum::BinomialMixture;
using binomsum::boundary_masses;
using binomsum::cached_pmf_table;
using binomsum::density_first_order;
using binomsum::density_second_order;
using binomsum::pmf_at;
using binomsum::pmf_table;
using binomsum::PmfTable;
using binomsum::solve_saddlepoint;

TEST_CASE("boundary masses") {
  SUBCASE("dyadic probabilities are exact") {
    const auto [b0, bn] = boundary_masses(BinomialMixture({1, 1}, {0.5, 0.5}));
    CHECK(b0 == 0.25);
    CHECK(bn == 0.25);
    const auto [c0, cn] = boundary_masses(BinomialMixture({2}, {0.5}));
    CHECK(c0 == 0.25);
    CHECK(cn == 0.25);
  }
  SUBCASE("healthcare mixture matches the log-domain product") {
    const auto mix = testutil::healthcare_mixture();
    double log2_zero = 0.0;
    for (std::size_t i = 0; i < testutil::kHealthcareSizes.size(); ++i) {
      log2_zero += static_cast<double>(testutil::kHealthcareSizes[i]) *
                   std::log2(1.0 - testutil::kHealthcareProbs[i]);
    }
    const auto [b0, bn] = boundary_masses(mix);
    CHECK(b0 == std::exp2(log2_zero));
    CHECK(bn > 0.0);
    CHECK(bn < 1e-100);  // prod p_i^{n_i} with p ~ 0.05 over 100 trials
  }
  SUBCASE("degenerate components zero out one side") {
    const auto [b0, bn] = boundary_masses(BinomialMixture({2, 3}, {1.0, 0.5}));
    CHECK(b0 == 0.0);
    CHECK(bn == 0.125);
    const auto [c0, cn] = boundary_masses(BinomialMixture({2, 3}, {0.0, 0.5}));
    CHECK(c0 == 0.125);
    CHECK(cn == 0.0);
  }
}

TEST_CASE("first-order density") {
  const BinomialMixture mix({10}, {0.5});
  SUBCASE("at the mean: 1/sqrt(2 pi K''(0))") {
    const auto root = solve_saddlepoint(mix, 5.0);
    CHECK(density_first_order(root, 5) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * M_PI * 2.5)).epsilon(1e-12));
  }
  SUBCASE("within a few percent of the exact pmf off the mean") {
    const auto root = solve_saddlepoint(mix, 7.0);
    const double exact = 0.1171875;  // C(10,7)/2^10
    // measured overshoot is 3.17%
    CHECK(std::abs(density_first_order(root, 7) - exact) / exact < 0.033);
  }
  SUBCASE("tightens with n") {
    const BinomialMixture big({100, 100}, {0.5, 0.5});
    const auto root = solve_saddlepoint(big, 100.0);
    const double exact = binomsum::binomial_pmf(200, 0.5)[100];
    // relative error at the mean is 1/(8 K'') + O(n^-2); measured 1.2508e-3
    CHECK(std::abs(density_first_order(root, 100) - exact) / exact < 1.3e-3);
  }
}

TEST_CASE("second-order density") {
  SUBCASE("odd cumulant vanishes at the symmetric mean") {
    const BinomialMixture mix({10}, {0.5});
    const auto root = solve_saddlepoint(mix, 5.0);
    CHECK(root.root.k3 == doctest::Approx(0.0));
    const double factor =
        1.0 + root.root.k4 / (8.0 * root.root.k2 * root.root.k2);
    CHECK(density_second_order(root, 5) ==
          doctest::Approx(density_first_order(root, 5) * factor).epsilon(1e-12));
  }
  SUBCASE("improves on first order") {
    const BinomialMixture mix({10}, {0.5});
    const auto root = solve_saddlepoint(mix, 7.0);
    const double exact = 0.1171875;
    CHECK(std::abs(density_second_order(root, 7) - exact) <
          std::abs(density_first_order(root, 7) - exact));
  }
  SUBCASE("clamps to zero when the correction overshoots") {
    // cooked root with a large skew term so the bracket goes negative
    binomsum::SaddlepointRoot root;
    root.target = 2.0;
    root.root = {0.5, -0.4, 2.0, 0.05, 1.0, 0.01};
    root.iterations = 1;
    root.residual = 0.0;
    const double k2 = root.root.k2;
    const double factor = 1.0 + root.root.k4 / (8.0 * k2 * k2) -
                          5.0 * root.root.k3 * root.root.k3 / (24.0 * k2 * k2 * k2);
    REQUIRE(factor < 0.0);
    CHECK(density_second_order(root, 2) == 0.0);
    CHECK(density_first_order(root, 2) > 0.0);
  }
}

TEST_CASE("pmf table") {
  SUBCASE("two-trial dyadic case is forced exactly") {
    const PmfTable table = pmf_table(BinomialMixture({2}, {0.5}));
    REQUIRE(table.mass.size() == 3);
    CHECK(table.mass[0] == 0.25);
    CHECK(table.mass[1] == 0.5);
    CHECK(table.mass[2] == 0.25);
  }
  SUBCASE("support {0,1} is all boundary") {
    const PmfTable table = pmf_table(BinomialMixture({1}, {0.3}));
    REQUIRE(table.mass.size() == 2);
    CHECK(table.mass[0] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(table.mass[1] == doctest::Approx(0.3).epsilon(1e-15));
  }
  SUBCASE("boundaries are bit-identical to boundary_masses") {
    std::mt19937_64 gen(23);
    for (int i = 0; i < 20; ++i) {
      const auto mix = testutil::random_mixture(gen, 3, 60, 0.05, 0.95);
      const auto [b0, bn] = boundary_masses(mix);
      const PmfTable table = pmf_table(mix);
      CHECK(table.mass[0] == b0);
      CHECK(table.mass[table.mass.size() - 1] == bn);
    }
  }
  SUBCASE("normalization within 1e-12") {
    std::mt19937_64 gen(29);
    for (int i = 0; i < 20; ++i) {
      const auto mix = testutil::random_mixture(gen, 3, 200, 0.02, 0.98);
      const PmfTable table = pmf_table(mix);
      CHECK((table.mass >= 0.0).all());
      CHECK((table.mass <= 1.0).all());
      CHECK(std::abs(table.mass.sum() - 1.0) <= 1e-12);
    }
  }
  SUBCASE("single binomial reduction") {
    for (const double p : {0.1, 0.5, 0.9}) {
      const BinomialMixture mix({40}, {p});
      const PmfTable table = pmf_table(mix);
      const binomsum::RealArray exact = binomsum::binomial_pmf(40, p);
      CHECK((table.mass - exact).abs().maxCoeff() < 1e-3);
      CHECK(table.mass[0] == exact[0]);
      CHECK(table.mass[40] == exact[40]);
    }
  }
  SUBCASE("symmetry under p -> 1-p") {
    const BinomialMixture mix({6, 9}, {0.3, 0.8});
    const BinomialMixture mirrored({6, 9}, {0.7, 0.2});
    const PmfTable a = pmf_table(mix);
    const PmfTable b = pmf_table(mirrored);
    for (Eigen::Index s = 0; s < a.mass.size(); ++s) {
      CHECK(a.mass[s] ==
            doctest::Approx(b.mass[b.mass.size() - 1 - s]).epsilon(1e-12));
    }
  }
  SUBCASE("oracle closeness on moderate mixtures") {
    std::mt19937_64 gen(31);
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
      const auto mix = testutil::random_mixture(gen, 20, 40, 0.1, 0.9);
      const PmfTable table = pmf_table(mix);
      const binomsum::ExactPmf exact = binomsum::exact_pmf(mix);
      const double max_abs = (table.mass - exact.mass).abs().maxCoeff();
      const double tv = 0.5 * (table.mass - exact.mass).abs().sum();
      worst = std::max({worst, max_abs, tv});
    }
    CHECK(worst <= 1e-3);
  }
  SUBCASE("degenerate components shift the support") {
    const BinomialMixture mix({2, 3}, {1.0, 0.5});
    const PmfTable table = pmf_table(mix);
    const binomsum::ExactPmf exact = binomsum::exact_pmf(mix);
    REQUIRE(table.mass.size() == 6);
    CHECK(table.mass[0] == 0.0);
    CHECK(table.mass[1] == 0.0);
    CHECK((table.mass - exact.mass).abs().maxCoeff() <= 1e-12);
  }
  SUBCASE("all-degenerate mixture is a point mass") {
    const PmfTable table = pmf_table(BinomialMixture({2, 3}, {1.0, 0.0}));
    REQUIRE(table.mass.size() == 6);
    CHECK(table.mass[2] == 1.0);
    CHECK(table.mass.sum() == 1.0);
  }
}

TEST_CASE("pmf_at lookups") {
  const BinomialMixture mix({2}, {0.5});
  CHECK(pmf_at(mix, -1) == 0.0);
  CHECK(pmf_at(mix, 3) == 0.0);
  CHECK(pmf_at(mix, 1) == 0.5);
  CHECK(pmf_at(mix, 1, true) == std::log(0.5));
  CHECK(pmf_at(mix, -1, true) == -std::numeric_limits<double>::infinity());

  const std::vector<std::int64_t> xs{0, 1, 2};
  const binomsum::RealArray values = pmf_at(mix, xs);
  CHECK(values[0] == 0.25);
  CHECK(values[1] == 0.5);
  CHECK(values[2] == 0.25);

  // the table is materialized once and shared by copies
  const PmfTable* first = &cached_pmf_table(mix);
  const BinomialMixture copy = mix;
  CHECK(&cached_pmf_table(copy) == first);
}
