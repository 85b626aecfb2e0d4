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
#include "wvg/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wvg/errors.hpp"
#include "wvg/rng.hpp"

namespace wvg {

double Game::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

Game make_game(std::vector<double> weights, double quota) {
  if (weights.empty()) throw ConfigError("game needs at least one agent");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("weights must be positive and finite");
  }
  if (!std::isfinite(quota)) throw ConfigError("quota must be finite");
  std::sort(weights.begin(), weights.end());
  return Game{std::move(weights), quota};
}

bool is_proper(const Game& g) { return g.quota > 0.0 && g.quota <= g.total_weight(); }

bool is_pivotal(const Game& g, double prefix_weight, double agent_weight) {
  return prefix_weight < g.quota && prefix_weight + agent_weight >= g.quota;
}

ShapleyProfile shapley_exact_perm(const Game& g) {
  const int n = g.n();
  if (n > 11) throw ConfigError("shapley_exact_perm: n exceeds the factorial guard of 11");
  std::vector<std::uint64_t> counts(n, 0);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::uint64_t perms = 0;
  do {
    double prefix = 0.0;
    for (int idx : order) {
      const double w = g.weights[idx];
      if (is_pivotal(g, prefix, w)) {
        ++counts[idx];
        break;
      }
      prefix += w;
    }
    ++perms;
  } while (std::next_permutation(order.begin(), order.end()));

  ShapleyProfile out;
  out.method = ShapleyMethod::ExactPerm;
  out.proper = is_proper(g);
  out.values.resize(n);
  for (int i = 0; i < n; ++i) {
    out.values[i] = static_cast<double>(counts[i]) / static_cast<double>(perms);
  }
  return out;
}

namespace {

// Sums coalition coefficients over all subsets of `others` for which joining
// makes the agent pivotal. Each leaf weight is a fresh forward sum, so no
// drift accumulates across the enumeration. Subtrees already at or past the
// quota are pruned: adding weight cannot bring the prefix back under it.
void accumulate_pivots(const std::vector<double>& others, std::size_t idx, double sum,
                       int count, double quota, double wi, const std::vector<double>& coeff,
                       double& acc) {
  if (sum >= quota) return;
  if (idx == others.size()) {
    if (sum + wi >= quota) acc += coeff[count];
    return;
  }
  accumulate_pivots(others, idx + 1, sum, count, quota, wi, coeff, acc);
  accumulate_pivots(others, idx + 1, sum + others[idx], count + 1, quota, wi, coeff, acc);
}

}  // namespace

ShapleyProfile shapley_exact_subset(const Game& g) {
  const int n = g.n();
  if (n > 24) throw ConfigError("shapley_exact_subset: n exceeds the subset guard of 24");

  // coeff[s] = s!(n-1-s)!/n!, built by the ratio recurrence to avoid large
  // factorials
  std::vector<double> coeff(n);
  coeff[0] = 1.0 / n;
  for (int s = 1; s < n; ++s) coeff[s] = coeff[s - 1] * s / (n - s);

  ShapleyProfile out;
  out.method = ShapleyMethod::ExactSubset;
  out.proper = is_proper(g);
  out.values.resize(n);
  std::vector<double> others(n - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0, k = 0; j < n; ++j) {
      if (j != i) others[k++] = g.weights[j];
    }
    double acc = 0.0;
    accumulate_pivots(others, 0, 0.0, 0, g.quota, g.weights[i], coeff, acc);
    out.values[i] = acc;
  }
  return out;
}

ShapleyProfile shapley_sample_perms(const Game& g, std::uint64_t k, std::uint64_t seed) {
  if (k < 1) throw ConfigError("shapley_sample_perms: need at least one permutation");
  const int n = g.n();
  std::vector<std::uint64_t> counts(n, 0);
  std::vector<int> order(n);

  // Fixed-size batches with per-batch substreams: the draw sequence depends
  // only on (seed, batch index), so a future parallel split cannot change
  // results.
  constexpr std::uint64_t kBatch = 4096;
  for (std::uint64_t start = 0; start < k; start += kBatch) {
    SplitMix64 rng = substream(seed, start / kBatch);
    const std::uint64_t stop = std::min(k, start + kBatch);
    for (std::uint64_t rep = start; rep < stop; ++rep) {
      std::iota(order.begin(), order.end(), 0);
      for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(order[i], order[j]);
      }
      double prefix = 0.0;
      for (int idx : order) {
        const double w = g.weights[idx];
        if (is_pivotal(g, prefix, w)) {
          ++counts[idx];
          break;
        }
        prefix += w;
      }
    }
  }

  ShapleyProfile out;
  out.method = ShapleyMethod::SampledPerm;
  out.sample_count = k;
  out.proper = is_proper(g);
  out.values.resize(n);
  out.stderrs.resize(n);
  const double kd = static_cast<double>(k);
  for (int i = 0; i < n; ++i) {
    const double c = static_cast<double>(counts[i]);
    out.values[i] = c / kd;
    // indicator sample variance (c - c^2/k)/(k-1)
    out.stderrs[i] = k > 1 ? std::sqrt((c - c * c / kd) / (kd - 1.0) / kd) : 0.0;
  }
  return out;
}

}  // namespace wvg
