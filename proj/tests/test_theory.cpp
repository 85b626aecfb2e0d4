// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "wvg/distributions.hpp"
#include "wvg/errors.hpp"
#include "wvg/theory.hpp"

using wvg::WeightDistribution;

TEST_CASE("uniform starting at zero: the scaled top value is 2 exactly") {
  auto u01 = WeightDistribution::uniform(0, 1);
  for (int n : {2, 5, 10, 50}) {
    auto pred = wvg::predict_max_expected(u01, n);
    CHECK(n * pred.value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(pred.form == wvg::PredictionForm::Quadrature);
    CHECK(pred.target == wvg::PredictionTarget::MaxRank);
    CHECK(pred.n == n);
  }
}

TEST_CASE("lowest-rank predictions for uniform weights: frozen references") {
  // Frozen from an independent multiprecision evaluation of
  // (1/n) E[x / mean_above(x)] under the n-minimum density.
  struct Ref { int n; double v; };
  const Ref refs[] = {{5, 0.052623555485568860511},
                      {10, 0.015699805028701572223},
                      {20, 0.0043775945051135346016},
                      {50, 0.0007557392351799292263}};
  auto u01 = WeightDistribution::uniform(0, 1);
  for (const auto& r : refs) {
    CHECK(wvg::predict_min_expected(u01, r.n).value ==
          doctest::Approx(r.v).epsilon(2e-9));
  }
}

TEST_CASE("general uniform laws: frozen references at n=10") {
  auto u13 = WeightDistribution::uniform(1, 3);
  auto u25 = WeightDistribution::uniform(2, 5);
  CHECK(wvg::predict_max_expected(u13, 10).value ==
        doctest::Approx(0.147512259925024674).epsilon(2e-9));
  CHECK(wvg::predict_min_expected(u13, 10).value ==
        doctest::Approx(0.0563075114775990565).epsilon(2e-9));
  CHECK(wvg::predict_max_expected(u25, 10).value ==
        doctest::Approx(0.140453790559454136).epsilon(2e-9));
  CHECK(wvg::predict_min_expected(u25, 10).value ==
        doctest::Approx(0.0623462565798286539).epsilon(2e-9));
}

TEST_CASE("series and quadrature agree for uniform laws") {
  const double ab[][2] = {{0, 1}, {1, 3}, {2, 5}};
  for (const auto& p : ab) {
    auto d = WeightDistribution::uniform(p[0], p[1]);
    for (int n : {5, 10, 20, 50}) {
      auto qmax = wvg::predict_max_expected(d, n);
      auto smax = wvg::uniform_series_max(p[0], p[1], n, 1e-12);
      CHECK(smax.value == doctest::Approx(qmax.value).epsilon(1e-8));
      CHECK(smax.form == wvg::PredictionForm::Series);
      auto qmin = wvg::predict_min_expected(d, n);
      auto smin = wvg::uniform_series_min(p[0], p[1], n, 1e-12);
      CHECK(smin.value == doctest::Approx(qmin.value).epsilon(1e-8));
    }
  }
}

TEST_CASE("series degenerate and limiting cases") {
  // a = 0 kills every correction term: the series is 2/n on the nose
  for (int n : {2, 7, 33}) {
    auto s = wvg::uniform_series_max(0, 1, n, 1e-12);
    CHECK(s.value == doctest::Approx(2.0 / n).epsilon(1e-15));
    CHECK(s.series_terms == 0);
  }
  // nearly equal weights share power equally
  CHECK(10 * wvg::uniform_series_max(0.999999, 1.000001, 10, 1e-12).value ==
        doctest::Approx(1.0).epsilon(1e-5));

  // scaled top value climbs monotonically to 2b/(a+b)
  double prev = 0.0;
  for (int n : {10, 100, 1000, 10000}) {
    const double scaled = n * wvg::uniform_series_max(1, 3, n, 1e-13).value;
    CHECK(scaled > prev);
    CHECK(scaled < 1.5);
    prev = scaled;
  }
  CHECK(1.5 - prev < 0.01);

  // a ratio so close to 1 that terms cannot reach the absolute floor within
  // the term cap
  CHECK_THROWS_AS(wvg::uniform_series_min(1e-9, 1.0, 2, 1e-12), wvg::ConvergenceError);
}

TEST_CASE("harmonic-number identity for the leading exponential term") {
  CHECK(wvg::exp_formulas(0).i_n == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(wvg::exp_formulas(1).i_n == doctest::Approx(0.75).epsilon(1e-15));
  // independent route: I_n = int_0^1 (1-t)^n ln(1/t) dt, mapped through
  // t = e^{-s} to the half line
  for (int n : {1, 5, 50, 200}) {
    const double closed = wvg::exp_formulas(n).i_n;
    const double quad = oracle::integrate_halfline(
        [n](double s) {
          return std::pow(-std::expm1(-s), static_cast<double>(n)) * s * std::exp(-s);
        },
        0.5);
    CHECK(closed == doctest::Approx(quad).epsilon(1e-10));
  }
}

TEST_CASE("lowest-rank exponential integral and its E1 identity") {
  for (int n : {2, 5, 10, 50}) {
    const double closed = wvg::exp_formulas(n).min_integral;
    const double quad = oracle::integrate_halfline(
        [n](double x) { return std::exp(-n * x) * x / (x + 1.0); }, 0.5 * n);
    CHECK(closed == doctest::Approx(quad).epsilon(1e-10));
  }
  const double m100 = wvg::exp_formulas(100).min_integral;
  CHECK(m100 == doctest::Approx(9.8057713266981593594e-5).epsilon(1e-12));
  CHECK(m100 > 0.95e-4);
  CHECK(m100 < 1.0e-4);
}

TEST_CASE("exponential weights: frozen top-rank predictions") {
  auto e1 = WeightDistribution::exponential(1);
  struct Ref { int n; double v; };
  const Ref refs[] = {{10, 0.358925829499758091},
                      {20, 0.203663018419917},
                      {50, 0.0958375137545913},
                      {100, 0.0538319054450403}};
  for (const auto& r : refs) {
    CHECK(wvg::predict_max_expected(e1, r.n).value == doctest::Approx(r.v).epsilon(2e-9));
  }
}

TEST_CASE("exponential lowest rank: predictor equals the closed integral") {
  auto e1 = WeightDistribution::exponential(1);
  for (int n : {5, 20, 100}) {
    CHECK(wvg::predict_min_expected(e1, n).value ==
          doctest::Approx(wvg::exp_formulas(n).min_integral).epsilon(1e-8));
  }
  // within 5% of 1/n^2 at n=100
  CHECK(wvg::predict_min_expected(e1, 100).value == doctest::Approx(1e-4).epsilon(0.05));
}

TEST_CASE("scaled top value for exponential weights vs its asymptote") {
  // The asymptote (ln n + gamma)/n undershoots the integral by a positive
  // correction of order log^2 n / n^2; assert the formula-level bound
  // |n*value - (ln n + gamma)| <= 2 log^2 n / n at n = 50.
  auto e1 = WeightDistribution::exponential(1);
  const int n = 50;
  const double scaled = n * wvg::predict_max_expected(e1, n).value;
  const double asym = std::log(static_cast<double>(n)) + std::numbers::egamma;
  CHECK(std::fabs(scaled - asym) <= 2.0 * std::pow(std::log(n), 2) / n);
  CHECK(scaled > asym);  // the correction terms are positive

  auto f = wvg::exp_formulas(n);
  CHECK(f.max_asymptotic == doctest::Approx(asym / n).epsilon(1e-15));
  CHECK(f.min_asymptotic == doctest::Approx(1.0 / (50.0 * 50.0)).epsilon(1e-15));
}

TEST_CASE("limiting scaled values at the support edges") {
  auto lim01 = wvg::limit_values(WeightDistribution::uniform(0, 1));
  CHECK_FALSE(lim01.max_is_infinite);
  CHECK(lim01.limit_max == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(lim01.limit_min == 0.0);
  auto lim13 = wvg::limit_values(WeightDistribution::uniform(1, 3));
  CHECK(lim13.limit_max == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(lim13.limit_min == doctest::Approx(0.5).epsilon(1e-15));
  auto lime = wvg::limit_values(WeightDistribution::exponential(1));
  CHECK(lime.max_is_infinite);
  CHECK(lime.limit_min == 0.0);
}

TEST_CASE("rank limits follow the quantile-over-mean law") {
  auto u01 = WeightDistribution::uniform(0, 1);
  for (double p : {0.1, 0.25, 0.5, 0.9}) {
    CHECK(wvg::predict_rank_limit(u01, p) == doctest::Approx(2.0 * p).epsilon(1e-13));
  }
  auto e1 = WeightDistribution::exponential(1);
  for (double p : {0.1, 0.5, 0.95}) {
    CHECK(wvg::predict_rank_limit(e1, p) == doctest::Approx(-std::log(1.0 - p)).epsilon(1e-13));
  }
  auto u25 = WeightDistribution::uniform(2, 5);
  for (double p : {0.25, 0.5, 0.75}) {
    const double expected = (2.0 * (1.0 - p) * 2.0 + 2.0 * p * 5.0) / 7.0;
    CHECK(wvg::predict_rank_limit(u25, p) == doctest::Approx(expected).epsilon(1e-13));
  }
  // continuity toward the top edge for a bounded law
  auto u13 = WeightDistribution::uniform(1, 3);
  CHECK(std::fabs(wvg::predict_rank_limit(u13, 1.0 - 1e-9) -
                  wvg::limit_values(u13).limit_max) < 1e-6);

  CHECK_THROWS_AS(wvg::predict_rank_limit(u01, 0.0), wvg::ConfigError);
  CHECK_THROWS_AS(wvg::predict_rank_limit(u01, 1.0), wvg::ConfigError);
  CHECK_THROWS_AS(wvg::predict_rank_limit(u01, -0.5), wvg::ConfigError);
}

TEST_CASE("the correction-sum values: frozen references and quadrature") {
  struct Ref { int n; double v; };
  const Ref refs[] = {{0, 0.5},
                      {1, 0.314814814814814815},
                      {2, 0.22337962962962963},
                      {5, 0.110520192203865673},
                      {10, 0.0537248672240227402},
                      {50, 0.00629022849599679301}};
  for (const auto& r : refs) {
    CHECK(wvg::jn_value(r.n) == doctest::Approx(r.v).epsilon(1e-12));
  }
  // independent route: int_0^1 (1-t)^n ln(1/t) (t + t ln(1/t)) dt via t=e^{-s}
  for (int n : {0, 1, 5}) {
    const double quad = oracle::integrate_halfline(
        [n](double s) {
          return std::pow(-std::expm1(-s), static_cast<double>(n)) * s * (1.0 + s) *
                 std::exp(-2.0 * s);
        },
        1.0);
    CHECK(wvg::jn_value(n) == doctest::Approx(quad).epsilon(1e-10));
  }
  for (int n : {0, 3, 17, 80, 200}) CHECK(wvg::jn_value(n) > 0.0);
  const double j100 = wvg::jn_value(100);
  CHECK(100.0 * 100.0 * j100 / std::pow(std::log(100.0), 2) <= 5.0);
}

TEST_CASE("prediction metadata: quota validity range and preconditions") {
  auto u01 = WeightDistribution::uniform(0, 1);
  auto pred = wvg::predict_max_expected(u01, 10);
  CHECK(pred.quota_lo == doctest::Approx(std::pow(10.0, 0.25)).epsilon(1e-12));
  CHECK(pred.quota_hi ==
        doctest::Approx((10.0 - std::pow(10.0, 2.0 / 3.0)) * 0.5).epsilon(1e-12));
  CHECK_THROWS_AS(wvg::predict_max_expected(u01, 1), wvg::ConfigError);
  CHECK_THROWS_AS(wvg::predict_min_expected(u01, 1), wvg::ConfigError);
}
