// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "wvg/distributions.hpp"
#include "wvg/errors.hpp"
#include "wvg/rng.hpp"

using wvg::ConditionedLaw;
using wvg::WeightDistribution;

TEST_CASE("density point values") {
  CHECK(WeightDistribution::uniform(0, 1).pdf(0.5) == 1.0);
  CHECK(WeightDistribution::exponential(1).pdf(0.0) == 1.0);
  CHECK(WeightDistribution::uniform(0, 1).pdf(1.5) == 0.0);
  CHECK(WeightDistribution::uniform(0, 1).pdf(-0.5) == 0.0);
  CHECK(WeightDistribution::exponential(2).pdf(0.0) == 2.0);
  CHECK(WeightDistribution::exponential(1).pdf(-1.0) == 0.0);
}

TEST_CASE("construction rejects invalid parameters") {
  CHECK_THROWS_AS(WeightDistribution::uniform(1, 1), wvg::ConfigError);
  CHECK_THROWS_AS(WeightDistribution::uniform(2, 1), wvg::ConfigError);
  CHECK_THROWS_AS(WeightDistribution::uniform(-0.5, 1), wvg::ConfigError);
  CHECK_THROWS_AS(WeightDistribution::exponential(0), wvg::ConfigError);
  CHECK_THROWS_AS(WeightDistribution::exponential(-2), wvg::ConfigError);
}

TEST_CASE("support bounds carry an explicit unbounded marker") {
  auto u = WeightDistribution::uniform(2, 4).support();
  CHECK(u.lower == 2.0);
  REQUIRE(u.upper_kind == wvg::SupportBounds::Tail::Finite);
  CHECK(u.upper == 4.0);
  auto e = WeightDistribution::exponential(1).support();
  CHECK(e.lower == 0.0);
  CHECK(e.upper_kind == wvg::SupportBounds::Tail::Infinite);
}

TEST_CASE("densities decay inside an exponential envelope") {
  // f(t) <= C e^{-lambda t} on a 100-point grid, constants per law.
  auto u = WeightDistribution::uniform(0, 1);
  auto e = WeightDistribution::exponential(1.5);
  for (int i = 0; i < 100; ++i) {
    double t = 0.02 * i;
    CHECK(u.pdf(t) <= 1.0001 * std::exp(1.0) * std::exp(-t));
    CHECK(e.pdf(t) <= 1.0001 * 1.5 * std::exp(-1.5 * t));
  }
}

TEST_CASE("conditional means, closed form vs quadrature oracle") {
  auto u01 = WeightDistribution::uniform(0, 1);
  auto e1 = WeightDistribution::exponential(1);

  CHECK(u01.mean_below(0.5) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(WeightDistribution::uniform(2, 4).mean_below(3.0) ==
        doctest::Approx(2.5).epsilon(1e-14));
  CHECK(e1.mean_above(2.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(u01.mean_above(0.5) == doctest::Approx(0.75).epsilon(1e-14));
  // x at the lower support edge conditions on nothing: unconditioned mean
  CHECK(WeightDistribution::uniform(1, 3).mean_above(1.0) ==
        doctest::Approx(2.0).epsilon(1e-14));

  // frozen multiprecision value of (1 - 2e^{-1})/(1 - e^{-1})
  CHECK(e1.mean_below(1.0) == doctest::Approx(0.41802329313067357561).epsilon(1e-14));
  // independent route: Simpson quadrature of the defining ratio
  double num = oracle::integrate([](double t) { return t * std::exp(-t); }, 0, 1);
  double den = oracle::integrate([](double t) { return std::exp(-t); }, 0, 1);
  CHECK(e1.mean_below(1.0) == doctest::Approx(num / den).epsilon(1e-11));

  // small-threshold conditioning approaches the uniform-on-[0,x] mean x/2
  CHECK(e1.mean_below(1e-8) == doctest::Approx(5e-9).epsilon(1e-6));
}

TEST_CASE("degenerate conditioning is a domain error") {
  auto u01 = WeightDistribution::uniform(0, 1);
  auto e1 = WeightDistribution::exponential(1);
  CHECK_THROWS_AS(u01.mean_below(0.0), std::domain_error);
  CHECK_THROWS_AS(u01.mean_below(-1.0), std::domain_error);
  CHECK_THROWS_AS(u01.mean_above(1.0), std::domain_error);
  CHECK_THROWS_AS(e1.mean_below(0.0), std::domain_error);
  CHECK_THROWS_AS(ConditionedLaw::below(u01, 0.0), std::domain_error);
  CHECK_THROWS_AS(ConditionedLaw::above(u01, 1.0), std::domain_error);
  CHECK_THROWS_AS(ConditionedLaw::mixture(u01, 0.5, 1.0), std::domain_error);
  // exponential upper tail is unbounded: any finite threshold conditions fine
  CHECK_NOTHROW(ConditionedLaw::above(e1, 1000.0));
}

TEST_CASE("second moments") {
  auto u01 = WeightDistribution::uniform(0, 1);
  auto e1 = WeightDistribution::exponential(1);
  CHECK(ConditionedLaw::full(u01).second_moment() ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(ConditionedLaw::full(e1).second_moment() == doctest::Approx(2.0).epsilon(1e-13));

  auto below = ConditionedLaw::below(u01, 0.5);
  CHECK(below.second_moment() == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  double q = oracle::integrate([](double t) { return t * t * 2.0; }, 0, 0.5);
  CHECK(below.second_moment() == doctest::Approx(q).epsilon(1e-11));

  // mixture second moment must equal the mass-weighted split (total expectation)
  auto mix = ConditionedLaw::mixture(u01, 0.3, 0.5);
  double above2 = ConditionedLaw::above(u01, 0.5).second_moment();
  CHECK(mix.second_moment() ==
        doctest::Approx(0.3 * (1.0 / 12.0) + 0.7 * above2).epsilon(1e-9));
}

TEST_CASE("law of total expectation across the split point") {
  std::vector<WeightDistribution> laws = {
      WeightDistribution::uniform(0, 1), WeightDistribution::uniform(2, 5),
      WeightDistribution::exponential(1), WeightDistribution::exponential(0.5)};
  for (const auto& d : laws) {
    auto sup = d.support();
    for (double frac : {0.1, 0.35, 0.6, 0.9}) {
      double hi = (sup.upper_kind == wvg::SupportBounds::Tail::Finite) ? sup.upper
                                                                       : sup.lower + 4.0;
      double x = sup.lower + frac * (hi - sup.lower);
      if (x <= sup.lower) continue;
      double p = d.cdf(x);
      CHECK(p * d.mean_below(x) + (1 - p) * d.mean_above(x) ==
            doctest::Approx(d.mean()).epsilon(1e-12));
      CHECK(d.mean_below(x) < x);
      CHECK(x < d.mean_above(x));
    }
  }
}

TEST_CASE("extreme order statistic densities") {
  auto u01 = WeightDistribution::uniform(0, 1);
  auto e1 = WeightDistribution::exponential(1);
  CHECK(wvg::extreme_order_density(u01, 2, wvg::Extreme::Max)(0.5) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(wvg::extreme_order_density(e1, 3, wvg::Extreme::Min)(0.0) ==
        doctest::Approx(3.0).epsilon(1e-14));
  CHECK(wvg::extreme_order_density(e1, 2, wvg::Extreme::Max)(std::log(2.0)) ==
        doctest::Approx(0.5).epsilon(1e-14));

  // n = 1 collapses to the base density
  auto d1 = wvg::extreme_order_density(e1, 1, wvg::Extreme::Max);
  for (double t : {0.0, 0.3, 1.7, 6.0}) CHECK(d1(t) == doctest::Approx(e1.pdf(t)));

  // normalization via the independent Simpson oracle
  auto dmax = wvg::extreme_order_density(u01, 5, wvg::Extreme::Max);
  CHECK(oracle::integrate([&](double t) { return dmax(t); }, 0, 1) ==
        doctest::Approx(1.0).epsilon(1e-8));
  auto dmin = wvg::extreme_order_density(e1, 4, wvg::Extreme::Min);
  CHECK(oracle::integrate_halfline([&](double t) { return dmin(t); }, 2.0) ==
        doctest::Approx(1.0).epsilon(1e-8));
  auto emax = wvg::extreme_order_density(e1, 6, wvg::Extreme::Max);
  CHECK(oracle::integrate_halfline([&](double t) { return emax(t); }, 0.5) ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("quantiles, including conditioned and mixture laws") {
  auto u01 = WeightDistribution::uniform(0, 1);
  auto e1 = WeightDistribution::exponential(1);
  CHECK(u01.quantile(0.3) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(e1.quantile(-std::expm1(-2.0)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ConditionedLaw::below(u01, 0.5).quantile(0.5) ==
        doctest::Approx(0.25).epsilon(1e-15));
  CHECK(ConditionedLaw::above(u01, 0.5).quantile(0.5) ==
        doctest::Approx(0.75).epsilon(1e-15));
  // mixture: mass p sits wholly below the threshold
  auto mix = ConditionedLaw::mixture(u01, 0.4, 0.5);
  CHECK(mix.quantile(0.2) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(mix.quantile(0.7) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("sampling is deterministic and matches analytic means") {
  auto u01 = WeightDistribution::uniform(0, 1);
  auto e1 = WeightDistribution::exponential(1);

  wvg::SplitMix64 g1 = wvg::substream(99, 0), g2 = wvg::substream(99, 0);
  auto law = ConditionedLaw::mixture(e1, 0.4, 1.0);
  for (int i = 0; i < 32; ++i) CHECK(law.sample(g1) == law.sample(g2));

  struct Case { ConditionedLaw law; const char* name; };
  Case cases[] = {{ConditionedLaw::full(u01), "U(0,1)"},
                  {ConditionedLaw::below(u01, 0.5), "U(0,1)|<=0.5"},
                  {ConditionedLaw::above(e1, 1.0), "Exp(1)|>=1"},
                  {ConditionedLaw::mixture(e1, 0.4, 1.0), "Exp(1) 0.4-mixture"}};
  int stream = 0;
  for (const auto& c : cases) {
    CAPTURE(c.name);
    const int reps = 1000000;
    wvg::SplitMix64 g = wvg::substream(1234, stream++);
    double sum = 0, sumsq = 0;
    for (int i = 0; i < reps; ++i) {
      double v = c.law.sample(g);
      sum += v;
      sumsq += v * v;
    }
    double mean = sum / reps;
    double var = (sumsq - sum * sum / reps) / (reps - 1);
    double se = std::sqrt(var / reps);
    CHECK(std::fabs(mean - c.law.mean()) < 5 * se);
  }
}

TEST_CASE("mixture density is the pointwise mass-weighted combination") {
  auto e1 = WeightDistribution::exponential(1);
  auto mix = ConditionedLaw::mixture(e1, 0.25, 1.5);
  auto below = ConditionedLaw::below(e1, 1.5);
  auto above = ConditionedLaw::above(e1, 1.5);
  for (double t : {0.1, 0.8, 1.4999, 1.5001, 3.0, 8.0}) {
    CHECK(mix.pdf(t) ==
          doctest::Approx(0.25 * below.pdf(t) + 0.75 * above.pdf(t)).epsilon(1e-13));
  }
}

TEST_CASE("distribution spec strings parse strictly") {
  auto u = wvg::parse_dist_spec("uniform:0,1");
  CHECK(u.kind() == wvg::DistKind::Uniform);
  CHECK(u.spec_string() == "uniform:0,1");
  auto u2 = wvg::parse_dist_spec("uniform:2.5,4");
  CHECK(u2.support().lower == 2.5);
  CHECK(u2.support().upper == 4.0);
  auto e = wvg::parse_dist_spec("exp:1");
  CHECK(e.kind() == wvg::DistKind::Exponential);
  CHECK(e.rate() == 1.0);
  CHECK(wvg::parse_dist_spec("exp:2.5").rate() == 2.5);

  for (const char* bad : {"uniform:1", "uniform:2,1", "uniform:0,1,2", "exp:-1",
                          "exp:0", "exp:", "exp:abc", "gauss:1", "", "uniform",
                          "uniform:a,b", "exp:1;rm", "exp:1 "}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(wvg::parse_dist_spec(bad), wvg::ConfigError);
  }
}
