#include "votecount/dist_core.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "votecount/sim_harness.hpp"

using votecount::BinomialParams;
using votecount::ProbabilityVector;

TEST_CASE("probability vector validation") {
  CHECK_NOTHROW(ProbabilityVector({0.5}));
  CHECK_NOTHROW(ProbabilityVector({0.5, 0.5, 0.999, 1e-9}));
  CHECK_THROWS_AS(ProbabilityVector({}), std::domain_error);
  CHECK_THROWS_AS(ProbabilityVector({0.5, 0.0}), std::domain_error);
  CHECK_THROWS_AS(ProbabilityVector({1.0}), std::domain_error);
  CHECK_THROWS_AS(ProbabilityVector({0.3, std::nan("")}), std::domain_error);
  CHECK_THROWS_AS(ProbabilityVector({-0.1}), std::domain_error);
}

TEST_CASE("standard normal cdf against series oracle") {
  CHECK(votecount::std_normal_cdf(0.0) == 0.5);
  for (double z = -6.0; z <= 6.0; z += 0.0625) {
    const double expected =
        static_cast<double>(oracles::std_normal_cdf_series(z));
    CHECK(std::abs(votecount::std_normal_cdf(z) - expected) <= 1e-12);
  }
  // matches the conventional two-sided 95% critical point
  CHECK(votecount::std_normal_cdf(1.959964) == doctest::Approx(0.975).epsilon(1e-6));

  SUBCASE("symmetry and monotonicity") {
    double prev = 0.0;
    for (double z = -8.0; z <= 8.0; z += 0.125) {
      const double phi = votecount::std_normal_cdf(z);
      CHECK(phi + votecount::std_normal_cdf(-z) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(phi > prev);
      prev = phi;
    }
  }

  CHECK_THROWS_AS(votecount::std_normal_cdf(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(votecount::std_normal_cdf(INFINITY), std::domain_error);
}

TEST_CASE("standard normal quantile") {
  CHECK(votecount::std_normal_quantile(0.5) == 0.0);
  // reference points derived by bisecting the series-oracle CDF
  CHECK(votecount::std_normal_quantile(0.975) ==
        doctest::Approx(1.959963984540054).epsilon(1e-11));
  CHECK(votecount::std_normal_quantile(0.55) ==
        doctest::Approx(0.125661346855074).epsilon(1e-11));
  CHECK(votecount::std_normal_quantile(0.05) ==
        doctest::Approx(-1.644853626951473).epsilon(1e-11));

  SUBCASE("round trip cdf(quantile(p)) = p") {
    for (double p = 0.0005; p < 1.0; p += 0.0101) {
      CHECK(votecount::std_normal_cdf(votecount::std_normal_quantile(p)) ==
            doctest::Approx(p).epsilon(1e-10));
    }
    for (double p : {1e-10, 1e-6, 1.0 - 1e-6, 1.0 - 1e-10}) {
      const double z = votecount::std_normal_quantile(p);
      CHECK(std::abs(votecount::std_normal_cdf(z) - p) <= 1e-10 * std::max(p, 1e-3));
    }
  }

  SUBCASE("upper-tail orientation: Phi(z_p) = 1 - p") {
    for (double p : {0.025, 0.2, 0.5, 0.9}) {
      CHECK(votecount::std_normal_cdf(votecount::upper_tail_quantile(p)) ==
            doctest::Approx(1.0 - p).epsilon(1e-12));
    }
  }

  CHECK_THROWS_AS(votecount::std_normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(votecount::std_normal_quantile(1.0), std::domain_error);
  CHECK_THROWS_AS(votecount::std_normal_quantile(-0.2), std::domain_error);
}

TEST_CASE("binomial pmf and cdf") {
  CHECK(votecount::binomial_pmf(BinomialParams(12, 0.5), 2) == 66.0 / 4096.0);
  CHECK(votecount::binomial_pmf(BinomialParams(1, 0.5), 1) == 0.5);
  CHECK(votecount::binomial_cdf(BinomialParams(12, 0.5), 2) == 79.0 / 4096.0);

  SUBCASE("pmf sums to one") {
    for (auto [n, pi] : std::vector<std::pair<int, double>>{
             {1, 0.5}, {12, 0.5}, {12, 0.3}, {50, 0.5}, {80, 0.07}, {200, 0.5}}) {
      double sum = 0.0;
      const BinomialParams params(n, pi);
      for (int x = 0; x <= n; ++x) sum += votecount::binomial_pmf(params, x);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  SUBCASE("degenerate pi") {
    CHECK(votecount::binomial_pmf(BinomialParams(5, 0.0), 0) == 1.0);
    CHECK(votecount::binomial_pmf(BinomialParams(5, 0.0), 3) == 0.0);
    CHECK(votecount::binomial_pmf(BinomialParams(5, 1.0), 5) == 1.0);
  }

  CHECK_THROWS_AS(votecount::binomial_pmf(BinomialParams(12, 0.5), 13),
                  std::domain_error);
  CHECK_THROWS_AS(votecount::binomial_pmf(BinomialParams(12, 0.5), -1),
                  std::domain_error);
  CHECK_THROWS_AS(BinomialParams(0, 0.5), std::domain_error);
  CHECK_THROWS_AS(BinomialParams(5, 1.5), std::domain_error);
}

TEST_CASE("poisson-binomial pmf by convolution") {
  SUBCASE("two fair coins") {
    const auto pmf = votecount::poisson_binomial_pmf(ProbabilityVector({0.5, 0.5}));
    REQUIRE(pmf.size() == 3);
    CHECK(pmf[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(pmf[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pmf[2] == doctest::Approx(0.25).epsilon(1e-15));
  }

  SUBCASE("constant vector reduces to the binomial") {
    votecount::SplitMix64 rng(2024);
    for (int n = 1; n <= 100; ++n) {
      const double pi = 0.02 + 0.96 * rng.uniform01();
      const auto pmf =
          votecount::poisson_binomial_pmf(ProbabilityVector(std::vector<double>(n, pi)));
      const BinomialParams params(n, pi);
      for (int x = 0; x <= n; ++x) {
        CHECK(std::abs(pmf[x] - votecount::binomial_pmf(params, x)) <= 1e-12);
      }
    }
    const auto pmf12 =
        votecount::poisson_binomial_pmf(ProbabilityVector(std::vector<double>(12, 0.5)));
    for (int x = 0; x <= 12; ++x) {
      CHECK(std::abs(pmf12[x] - votecount::binomial_pmf(BinomialParams(12, 0.5), x)) <=
            1e-12);
    }
  }

  SUBCASE("matches brute-force enumeration") {
    votecount::SplitMix64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
      const int n = 1 + static_cast<int>(rng.next() % 15);
      std::vector<double> probs(n);
      for (double& p : probs) p = 0.01 + 0.98 * rng.uniform01();
      const auto pmf = votecount::poisson_binomial_pmf(ProbabilityVector(probs));
      const auto brute = oracles::poisson_binomial_brute_force(probs);
      double sum = 0.0;
      for (int x = 0; x <= n; ++x) {
        CHECK(std::abs(pmf[x] - brute[x]) <= 1e-12);
        CHECK(pmf[x] >= 0.0);
        sum += pmf[x];
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  SUBCASE("mean equals the sum of the probabilities") {
    votecount::SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 1 + static_cast<int>(rng.next() % 30);
      std::vector<double> probs(n);
      for (double& p : probs) p = 0.01 + 0.98 * rng.uniform01();
      const ProbabilityVector pv(probs);
      const auto pmf = votecount::poisson_binomial_pmf(pv);
      double mean = 0.0;
      for (std::size_t x = 0; x < pmf.size(); ++x) mean += x * pmf[x];
      CHECK(mean == doctest::Approx(votecount::poisson_binomial_mean(pv)).epsilon(1e-10));
    }
  }
}

TEST_CASE("poisson-binomial cdf") {
  const ProbabilityVector two({0.5, 0.5});
  CHECK(votecount::poisson_binomial_cdf(two, 1) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(votecount::poisson_binomial_cdf(two, 2) == doctest::Approx(1.0).epsilon(1e-15));

  // K = 10 of 12 studies at 0.55, two at 0.05: lower tail at the critical
  // value 2 prints as 0.025
  std::vector<double> scenario(10, 0.55);
  scenario.insert(scenario.end(), 2, 0.05);
  const double tail = votecount::poisson_binomial_cdf(ProbabilityVector(scenario), 2);
  CHECK(std::round(tail * 1000.0) / 1000.0 == 0.025);

  SUBCASE("monotone in x") {
    const ProbabilityVector pv({0.2, 0.7, 0.55, 0.9, 0.05});
    double prev = -1.0;
    for (int x = 0; x <= 5; ++x) {
      const double c = votecount::poisson_binomial_cdf(pv, x);
      CHECK(c >= prev);
      prev = c;
    }
    CHECK(prev == doctest::Approx(1.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(votecount::poisson_binomial_cdf(two, 3), std::domain_error);
  CHECK_THROWS_AS(votecount::poisson_binomial_cdf(two, -1), std::domain_error);
}
