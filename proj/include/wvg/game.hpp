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
#include <vector>

namespace wvg {

// A weighted voting game. Weights are kept sorted non-decreasing, so the
// vector index doubles as the rank (index 0 = lowest weight = rank 1).
struct Game {
  std::vector<double> weights;
  double quota = 0.0;

  int n() const { return static_cast<int>(weights.size()); }
  double total_weight() const;
};

// Validates (non-empty, finite, all weights > 0, finite quota) and sorts.
Game make_game(std::vector<double> weights, double quota);

// A game is proper when 0 < quota <= total weight; only proper games have a
// winning coalition and a pivot in every permutation.
bool is_proper(const Game& g);

// The agent joining a coalition of weight prefix_weight is pivotal iff
// prefix_weight < q <= prefix_weight + agent_weight, with exactly these
// comparisons. Ties at the boundary follow the literal float comparisons;
// continuous weights put zero mass there.
bool is_pivotal(const Game& g, double prefix_weight, double agent_weight);

enum class ShapleyMethod { ExactPerm, ExactSubset, SampledPerm };

struct ShapleyProfile {
  std::vector<double> values;   // indexed by rank
  std::vector<double> stderrs;  // empty for exact methods
  ShapleyMethod method = ShapleyMethod::ExactPerm;
  std::uint64_t sample_count = 0;  // permutations drawn (sampled method only)
  bool proper = true;
};

// Exact average over all n! orders; n <= 11.
ShapleyProfile shapley_exact_perm(const Game& g);

// Exact coalition-sum form sum_S |S|!(n-1-|S|)!/n! over subsets where the
// agent is pivotal; n <= 24. Agrees with the permutation form.
ShapleyProfile shapley_exact_subset(const Game& g);

// Unbiased estimate from k uniform permutations; stderr per agent is the
// sample standard deviation of the pivot indicator divided by sqrt(k).
ShapleyProfile shapley_sample_perms(const Game& g, std::uint64_t k, std::uint64_t seed);

}  // namespace wvg
