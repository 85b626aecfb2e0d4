// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "wvg/distributions.hpp"
#include "wvg/errors.hpp"
#include "wvg/montecarlo.hpp"

using wvg::Estimator;
using wvg::ExperimentConfig;
using wvg::WeightDistribution;
using wvg::WeightModel;

namespace {

ExperimentConfig base_config() {
  ExperimentConfig cfg;
  cfg.dist = WeightDistribution::uniform(0, 1);
  cfg.n = 10;
  cfg.model = WeightModel::NormalizedIID;
  cfg.quota_grid = {0.5};
  cfg.reps = 10000;
  cfg.seed = 42;
  return cfg;
}

}  // namespace

TEST_CASE("pivotal rank walks the permutation with the half-open test") {
  // ranks are 0-based here; the (1,2,3) q=4 game drawn as (3rd, 1st, 2nd):
  // prefix 0 cannot reach 4 with weight 3; prefix 3 < 4 <= 3+1 pivots rank 0
  std::vector<double> w = {1, 2, 3};
  CHECK(wvg::pivotal_rank(w, 4.0, {2, 0, 1}) == 0);
  CHECK(wvg::pivotal_rank(w, 4.0, {0, 1, 2}) == 2);
  CHECK_FALSE(wvg::pivotal_rank(w, 7.0, {0, 1, 2}).has_value());  // beyond total
  // a vanishing quota pivots whoever comes first
  CHECK(wvg::pivotal_rank(w, 1e-9, {1, 2, 0}) == 1);
  CHECK_THROWS_AS(wvg::pivotal_rank(w, 4.0, {0, 1, 1}), wvg::ConfigError);
}

TEST_CASE("config validation") {
  auto cfg = base_config();
  cfg.reps = 0;
  CHECK_THROWS_AS(wvg::run_experiment(cfg), wvg::ConfigError);
  cfg = base_config();
  cfg.quota_grid = {};
  CHECK_THROWS_AS(wvg::run_experiment(cfg), wvg::ConfigError);
  cfg = base_config();
  cfg.quota_grid = {0.5, 0.5};
  CHECK_THROWS_AS(wvg::run_experiment(cfg), wvg::ConfigError);
  cfg = base_config();
  cfg.quota_grid = {0.3, 0.2};
  CHECK_THROWS_AS(wvg::run_experiment(cfg), wvg::ConfigError);
  cfg = base_config();
  cfg.quota_grid = {1.0};  // normalized quotas live strictly inside (0,1)
  CHECK_THROWS_AS(wvg::run_experiment(cfg), wvg::ConfigError);
  cfg = base_config();
  cfg.model = WeightModel::NaturalIID;
  cfg.quota_grid = {-1.0, 2.0};
  CHECK_THROWS_AS(wvg::run_experiment(cfg), wvg::ConfigError);
  cfg = base_config();
  cfg.estimator = Estimator::ExactPerGame;
  cfg.n = 12;
  CHECK_THROWS_AS(wvg::run_experiment(cfg), wvg::ConfigError);
  cfg = base_config();
  cfg.n = 0;
  CHECK_THROWS_AS(wvg::run_experiment(cfg), wvg::ConfigError);
}

TEST_CASE("a lone agent is always pivotal") {
  auto cfg = base_config();
  cfg.n = 1;
  cfg.reps = 1000;
  auto res = wvg::run_experiment(cfg);
  CHECK(res.means[0][0] == 1.0);
  CHECK(res.stderrs[0][0] == 0.0);
  CHECK(res.improper[0] == 0);
}

TEST_CASE("results are bit-identical across reruns and thread counts") {
  auto cfg = base_config();
  cfg.n = 7;
  cfg.quota_grid = {0.2, 0.5, 0.8};
  cfg.reps = 50000;  // spans several replication blocks
  auto a = wvg::run_experiment(cfg);
  auto b = wvg::run_experiment(cfg);
  cfg.threads = 3;
  auto c = wvg::run_experiment(cfg);
  CHECK(a.means == b.means);
  CHECK(a.stderrs == b.stderrs);
  CHECK(a.means == c.means);
  CHECK(a.stderrs == c.stderrs);
  CHECK(a.improper == c.improper);

  cfg.threads = 1;
  cfg.seed = 43;
  auto d = wvg::run_experiment(cfg);
  CHECK(a.means != d.means);
}

TEST_CASE("rank means sum to one per proper quota") {
  auto cfg = base_config();
  cfg.quota_grid = {0.2, 0.5, 0.8};
  cfg.reps = 20000;
  auto res = wvg::run_experiment(cfg);
  for (std::size_t qi = 0; qi < cfg.quota_grid.size(); ++qi) {
    CHECK(res.improper[qi] == 0);  // normalized games are always proper
    double sum = 0.0;
    for (int r = 0; r < cfg.n; ++r) sum += res.means[qi][r];
    CHECK(std::fabs(sum - 1.0) <= 1e-9);
  }
}

TEST_CASE("improper replications are counted, not silently dropped") {
  ExperimentConfig cfg;
  cfg.dist = WeightDistribution::uniform(0, 1);
  cfg.n = 5;
  cfg.model = WeightModel::NaturalIID;
  cfg.quota_grid = {4.0};  // total weight exceeds 4 only sometimes
  cfg.reps = 20000;
  cfg.seed = 5;
  auto res = wvg::run_experiment(cfg);
  CHECK(res.improper[0] > 0);
  double sum = 0.0;
  for (int r = 0; r < cfg.n; ++r) sum += res.means[0][r];
  sum += static_cast<double>(res.improper[0]) / cfg.reps;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("one-permutation and exact-per-game estimators agree") {
  // same seed means the two estimators see identical sampled games
  ExperimentConfig cfg;
  cfg.dist = WeightDistribution::uniform(0, 1);
  cfg.n = 8;
  cfg.model = WeightModel::NaturalIID;
  cfg.quota_grid = {2.0};  // 0.5 * n * E[X]
  cfg.reps = 200000;
  cfg.seed = 77;
  auto one = wvg::run_experiment(cfg);
  cfg.estimator = Estimator::ExactPerGame;
  auto exact = wvg::run_experiment(cfg);
  for (int r = 0; r < cfg.n; ++r) {
    const double se =
        std::sqrt(one.stderrs[0][r] * one.stderrs[0][r] + exact.stderrs[0][r] * exact.stderrs[0][r]);
    CHECK(std::fabs(one.means[0][r] - exact.means[0][r]) <= 5.0 * se);
  }
}

TEST_CASE("uniform weights: the top agent's scaled value approaches 2") {
  auto cfg = base_config();
  cfg.reps = 1000000;
  auto res = wvg::run_experiment(cfg);
  CHECK(std::fabs(cfg.n * res.means[0][cfg.n - 1] - 2.0) < 0.05);
  // estimated means are monotone in rank up to noise
  for (int r = 1; r < cfg.n; ++r) {
    CHECK(res.means[0][r] + 3.0 * (res.stderrs[0][r] + res.stderrs[0][r - 1]) >=
          res.means[0][r - 1]);
  }
}

TEST_CASE("exponential weights match the independent quadrature value") {
  // Frozen from a multiprecision evaluation of the top-rank integral
  // (1/n) E[x / mean_below(x)] under the n-maximum density, n = 20.
  const double predicted = 0.203663018419917;
  ExperimentConfig cfg;
  cfg.dist = WeightDistribution::exponential(1);
  cfg.n = 20;
  cfg.model = WeightModel::NaturalIID;
  cfg.quota_grid = {10.0};  // 0.5 * n * E[X], inside the plateau
  cfg.reps = 200000;
  cfg.seed = 2718;
  auto nat = wvg::run_experiment(cfg);
  CHECK(std::fabs(nat.means[0][cfg.n - 1] - predicted) < 5.0 * nat.stderrs[0][cfg.n - 1]);

  cfg.model = WeightModel::NormalizedIID;
  cfg.quota_grid = {0.5};
  auto norm = wvg::run_experiment(cfg);
  CHECK(std::fabs(norm.means[0][cfg.n - 1] - predicted) < 5.0 * norm.stderrs[0][cfg.n - 1]);
}

TEST_CASE("full profiles track the linear law for uniform weights") {
  ExperimentConfig cfg;
  cfg.dist = WeightDistribution::uniform(0, 1);
  cfg.n = 100;
  cfg.model = WeightModel::NormalizedIID;
  cfg.quota_grid = {0.5};
  cfg.reps = 400000;
  cfg.seed = 99;
  auto res = wvg::profile_sweep(cfg);
  for (int rank : {19, 49, 79}) {
    const double p = static_cast<double>(rank + 1) / cfg.n;
    CHECK(std::fabs(cfg.n * res.means[0][rank] - 2.0 * p) < 0.15);
  }
}
