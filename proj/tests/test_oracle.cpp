#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "binomsum/density.hpp"
#include "binomsum/oracle.hpp"
#include "test_util.hpp"

using binomsum::BinomialMixture;
using binomsum::binomial_pmf;
using binomsum::empirical_pmf;
using binomsum::exact_pmf;
using binomsum::ExactPmf;
using binomsum::sample;

TEST_CASE("binomial_pmf closed form") {
  const binomsum::RealArray pmf = binomial_pmf(2, 0.5);
  CHECK(pmf[0] == 0.25);
  CHECK(pmf[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pmf[2] == 0.25);
  CHECK(std::abs(binomial_pmf(30, 0.37).sum() - 1.0) < 1e-12);

  CHECK(binomial_pmf(5, 0.0)[0] == 1.0);
  CHECK(binomial_pmf(5, 1.0)[5] == 1.0);
}

TEST_CASE("exact_pmf basics") {
  const ExactPmf one = exact_pmf(BinomialMixture({2}, {0.5}));
  CHECK(one.mass[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(one.mass[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(one.mass[2] == doctest::Approx(0.25).epsilon(1e-15));

  const ExactPmf two = exact_pmf(BinomialMixture({1, 1}, {0.5, 0.5}));
  const auto brute = testutil::brute_force_pmf({1, 1}, {0.5, 0.5});
  for (Eigen::Index s = 0; s < two.mass.size(); ++s) {
    CHECK(two.mass[s] == doctest::Approx(brute[s]).epsilon(1e-14));
  }
}

TEST_CASE("identical-p mixtures collapse to one binomial") {
  const ExactPmf got = exact_pmf(BinomialMixture({10, 100}, {0.3, 0.3}));
  const binomsum::RealArray want = binomial_pmf(110, 0.3);
  CHECK((got.mass - want).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("matches brute-force enumeration on small mixtures") {
  std::mt19937_64 gen(37);
  for (int i = 0; i < 50; ++i) {
    const auto mix = testutil::random_mixture(gen, 2, 12, 0.0, 1.0, 3);
    const std::vector<std::int64_t> sizes(mix.sizes().data(),
                                          mix.sizes().data() + mix.component_count());
    const std::vector<double> probs(mix.probs().data(),
                                    mix.probs().data() + mix.component_count());
    const auto brute = testutil::brute_force_pmf(sizes, probs);
    const ExactPmf got = exact_pmf(mix);
    REQUIRE(got.mass.size() == static_cast<Eigen::Index>(brute.size()));
    for (std::size_t s = 0; s < brute.size(); ++s) {
      CHECK(std::abs(got.mass[static_cast<Eigen::Index>(s)] - brute[s]) <= 1e-12);
    }
  }
}

TEST_CASE("concatenation equals convolution") {
  std::mt19937_64 gen(41);
  for (int i = 0; i < 25; ++i) {
    const auto a = testutil::random_mixture(gen, 2, 30, 0.02, 0.98);
    const auto b = testutil::random_mixture(gen, 2, 30, 0.02, 0.98);
    std::vector<std::int64_t> sizes(a.sizes().data(),
                                    a.sizes().data() + a.component_count());
    std::vector<double> probs(a.probs().data(),
                              a.probs().data() + a.component_count());
    sizes.insert(sizes.end(), b.sizes().data(), b.sizes().data() + b.component_count());
    probs.insert(probs.end(), b.probs().data(), b.probs().data() + b.component_count());

    const ExactPmf whole = exact_pmf(BinomialMixture(sizes, probs));
    const ExactPmf pa = exact_pmf(a);
    const ExactPmf pb = exact_pmf(b);
    const auto conv = testutil::convolve_ref(
        std::vector<double>(pa.mass.data(), pa.mass.data() + pa.mass.size()),
        std::vector<double>(pb.mass.data(), pb.mass.data() + pb.mass.size()));
    for (std::size_t s = 0; s < conv.size(); ++s) {
      CHECK(std::abs(whole.mass[static_cast<Eigen::Index>(s)] - conv[s]) <= 1e-12);
    }
  }
}

TEST_CASE("masses are a distribution and boundaries match the products") {
  std::mt19937_64 gen(43);
  for (int i = 0; i < 25; ++i) {
    const auto mix = testutil::random_mixture(gen, 2, 80, 0.0, 1.0);
    const ExactPmf got = exact_pmf(mix);
    CHECK((got.mass >= 0.0).all());
    CHECK(std::abs(got.mass.sum() - 1.0) <= 1e-9);
    const auto [b0, bn] = binomsum::boundary_masses(mix);
    CHECK(std::abs(got.mass[0] - b0) <= 1e-12);
    CHECK(std::abs(got.mass[got.mass.size() - 1] - bn) <= 1e-12);
  }
}

TEST_CASE("enumeration guard refuses oversized requests") {
  const BinomialMixture mix({2'000'000}, {0.5});
  CHECK_THROWS_AS(exact_pmf(mix), binomsum::guard_error);
  CHECK_THROWS_WITH_AS(exact_pmf(mix),
                       doctest::Contains("1000000"), binomsum::guard_error);
}

TEST_CASE("sampler determinism and degenerate components") {
  const BinomialMixture sure({1}, {1.0});
  for (const std::int64_t v : sample(sure, 50, 9)) CHECK(v == 1);

  const auto mix = testutil::healthcare_mixture();
  const auto a = sample(mix, 1000, 42);
  const auto b = sample(mix, 1000, 42);
  CHECK(a == b);
  const auto c = sample(mix, 1000, 43);
  CHECK(a != c);
}

TEST_CASE("sample mean within 4 standard errors") {
  const BinomialMixture mix({2, 3}, {0.5, 0.5});
  const auto draws = sample(mix, 100000, 42);
  const double mean =
      std::accumulate(draws.begin(), draws.end(), 0.0) / draws.size();
  const double se = std::sqrt(1.25 / 100000.0);
  CHECK(std::abs(mean - 2.5) <= 4.0 * se);
}

TEST_CASE("inversion path (n > 64) matches its moments") {
  const BinomialMixture mix({100}, {0.3});
  const auto draws = sample(mix, 20000, 7);
  const double mean =
      std::accumulate(draws.begin(), draws.end(), 0.0) / draws.size();
  const double se = std::sqrt(21.0 / 20000.0);
  CHECK(std::abs(mean - 30.0) <= 4.0 * se);
  const auto again = sample(mix, 20000, 7);
  CHECK(draws == again);
}

TEST_CASE("healthcare sample matches the exact pmf") {
  const auto mix = testutil::healthcare_mixture();
  const auto draws = sample(mix, 1'000'000, 42);
  const binomsum::RealArray emp = empirical_pmf(draws, mix.total_trials());
  const binomsum::RealArray exact = exact_pmf(mix).mass;
  const double tv = 0.5 * (emp - exact).abs().sum();
  CHECK(tv < 5e-3);
}

TEST_CASE("empirical_pmf counting") {
  const std::vector<std::int64_t> draws{0, 0, 1, 1};
  const binomsum::RealArray freq = empirical_pmf(draws, 2);
  CHECK(freq[0] == 0.5);
  CHECK(freq[1] == 0.5);
  CHECK(freq[2] == 0.0);

  const std::vector<std::int64_t> threes{3, 3, 3};
  const binomsum::RealArray point = empirical_pmf(threes, 3);
  CHECK(point[3] == 1.0);
  CHECK(point.head(3).sum() == 0.0);

  const auto mix = BinomialMixture({2}, {0.5});
  const auto big = sample(mix, 10000, 5);
  const binomsum::RealArray f = empirical_pmf(big, 2);
  CHECK(std::abs(f[0] - 0.25) <= 0.02);
  CHECK(std::abs(f[1] - 0.5) <= 0.02);
  CHECK(std::abs(f[2] - 0.25) <= 0.02);

  CHECK_THROWS_AS(empirical_pmf(std::vector<std::int64_t>{}, 3),
                  std::invalid_argument);
}
