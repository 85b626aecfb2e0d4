/*
 * Copyright 2026 the wvg authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wvg/distributions.hpp"

namespace wvg {

// NaturalIID: absolute quotas against raw i.i.d. weights. NormalizedIID:
// weights divided by their sum, quotas as fractions in (0,1).
enum class WeightModel { NaturalIID, NormalizedIID };

// OnePermPerGame: one uniform permutation per sampled game; unbiased for
// E[value] jointly over weights and order, and cheap enough for n = 100 at
// 10^6 replications. ExactPerGame: full exact profile per game (n <= 11).
enum class Estimator { OnePermPerGame, ExactPerGame };

struct ExperimentConfig {
  WeightDistribution dist = WeightDistribution::uniform(0.0, 1.0);
  int n = 0;
  WeightModel model = WeightModel::NormalizedIID;
  std::vector<double> quota_grid;  // strictly increasing
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  Estimator estimator = Estimator::OnePermPerGame;
  int threads = 1;  // 0 = hardware concurrency; never affects results
};

struct ExperimentResult {
  ExperimentConfig config;  // echo of the resolved configuration
  // means[quota_index][rank] estimates E[value of the rank-th lowest agent];
  // ranks are 0-based here, 1-based only in serialized output
  std::vector<std::vector<double>> means;
  std::vector<std::vector<double>> stderrs;
  // per quota: replications whose game had no winning coalition
  std::vector<std::uint64_t> improper;
};

// Walks the draw order given as 0-based ranks into sorted_weights,
// accumulating prefix weight; returns the rank of the pivotal agent, or
// nullopt when the quota is out of reach.
std::optional<int> pivotal_rank(const std::vector<double>& sorted_weights, double quota,
                                const std::vector<int>& order);

// Samples cfg.reps games, estimates E[value] for every rank on every quota in
// the grid. Deterministic in (config, seed); the thread count never changes
// results (every replication draws from its own seed-derived substream, and
// blocks are merged in index order).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Identical engine; spelled separately where the intent is a full
// rank-by-rank profile rather than extreme ranks.
ExperimentResult profile_sweep(const ExperimentConfig& cfg);

}  // namespace wvg
