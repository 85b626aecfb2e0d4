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
#include "wvg/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "wvg/errors.hpp"
#include "wvg/game.hpp"
#include "wvg/rng.hpp"

namespace wvg {
namespace {

// Replication `rep` always draws from substream(seed, rep), regardless of how
// work is split across threads, so results are a pure function of (config,
// seed) and a shared seed reuses the same sampled games across estimators.
// Blocks are purely parallel work units, merged in block order.
constexpr std::uint64_t kBlockSize = 1 << 14;

struct BlockTally {
  std::vector<std::uint64_t> counts;    // quota-major [qi*n + rank], one-perm
  std::vector<double> sum, sumsq;       // quota-major, exact estimator
  std::vector<std::uint64_t> improper;  // per quota
};

void validate(const ExperimentConfig& cfg) {
  if (cfg.n < 1) throw ConfigError("experiment: n must be at least 1");
  if (cfg.reps < 1) throw ConfigError("experiment: need at least one replication");
  if (cfg.quota_grid.empty()) throw ConfigError("experiment: quota grid is empty");
  for (std::size_t i = 0; i < cfg.quota_grid.size(); ++i) {
    const double q = cfg.quota_grid[i];
    if (!std::isfinite(q)) throw ConfigError("experiment: quota must be finite");
    if (i > 0 && !(q > cfg.quota_grid[i - 1])) {
      throw ConfigError("experiment: quota grid must be strictly increasing");
    }
    if (cfg.model == WeightModel::NormalizedIID && !(q > 0.0 && q < 1.0)) {
      throw ConfigError("experiment: normalized quotas live strictly inside (0,1)");
    }
    if (cfg.model == WeightModel::NaturalIID && !(q > 0.0)) {
      throw ConfigError("experiment: absolute quotas must be positive");
    }
  }
  if (cfg.estimator == Estimator::ExactPerGame && cfg.n > 11) {
    throw ConfigError("experiment: exact per-game estimation is limited to n <= 11");
  }
  if (cfg.threads < 0) throw ConfigError("experiment: thread count cannot be negative");
}

// The draw order of i.i.d. weights is itself a uniform permutation of the
// sorted game, so no explicit shuffle is needed: walk the weights as drawn,
// find the pivot by prefix sum, and charge its sorted rank.
void run_block_one_perm(const ExperimentConfig& cfg, std::uint64_t block, BlockTally& tally,
                        std::vector<double>& w, std::vector<double>& pref) {
  const int n = cfg.n;
  const int grid = static_cast<int>(cfg.quota_grid.size());
  const std::uint64_t begin = block * kBlockSize;
  const std::uint64_t end = std::min(cfg.reps, begin + kBlockSize);
  for (std::uint64_t rep = begin; rep < end; ++rep) {
    SplitMix64 rng = substream(cfg.seed, rep);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      w[i] = cfg.dist.sample(rng);
      acc += w[i];
      pref[i] = acc;
    }
    const double total = pref[n - 1];
    int k = 0;          // quotas ascend, so the pivot index never moves back
    int cached_k = -1;  // rank lookups are O(n); reuse them across quotas
    int cached_rank = -1;
    for (int qi = 0; qi < grid; ++qi) {
      const double quota =
          cfg.model == WeightModel::NaturalIID ? cfg.quota_grid[qi] : cfg.quota_grid[qi] * total;
      if (quota > total) {
        ++tally.improper[qi];
        continue;
      }
      while (pref[k] < quota) ++k;
      if (k != cached_k) {
        const double wp = w[k];
        int rank = 0;
        for (int j = 0; j < n; ++j) {
          if (w[j] < wp || (w[j] == wp && j < k)) ++rank;
        }
        cached_k = k;
        cached_rank = rank;
      }
      ++tally.counts[qi * n + cached_rank];
    }
  }
}

void run_block_exact(const ExperimentConfig& cfg, std::uint64_t block, BlockTally& tally,
                     std::vector<double>& w, std::vector<double>& sorted) {
  const int n = cfg.n;
  const int grid = static_cast<int>(cfg.quota_grid.size());
  const std::uint64_t begin = block * kBlockSize;
  const std::uint64_t end = std::min(cfg.reps, begin + kBlockSize);
  for (std::uint64_t rep = begin; rep < end; ++rep) {
    SplitMix64 rng = substream(cfg.seed, rep);
    for (int i = 0; i < n; ++i) w[i] = cfg.dist.sample(rng);
    sorted = w;
    std::sort(sorted.begin(), sorted.end());
    double sum_all = 0.0;
    for (double v : sorted) sum_all += v;
    for (int qi = 0; qi < grid; ++qi) {
      const double quota =
          cfg.model == WeightModel::NaturalIID ? cfg.quota_grid[qi] : cfg.quota_grid[qi] * sum_all;
      Game g{sorted, quota};
      ShapleyProfile prof = shapley_exact_subset(g);
      if (!prof.proper) ++tally.improper[qi];
      for (int r = 0; r < n; ++r) {
        const double v = prof.values[r];
        tally.sum[qi * n + r] += v;
        tally.sumsq[qi * n + r] += v * v;
      }
    }
  }
}

}  // namespace

std::optional<int> pivotal_rank(const std::vector<double>& sorted_weights, double quota,
                                const std::vector<int>& order) {
  const int n = static_cast<int>(sorted_weights.size());
  std::vector<char> seen(n, 0);
  if (static_cast<int>(order.size()) != n) throw ConfigError("pivotal_rank: order size mismatch");
  for (int r : order) {
    if (r < 0 || r >= n || seen[r]) throw ConfigError("pivotal_rank: order is not a permutation");
    seen[r] = 1;
  }
  double prefix = 0.0;
  for (int r : order) {
    const double w = sorted_weights[r];
    if (prefix < quota && prefix + w >= quota) return r;
    prefix += w;
  }
  return std::nullopt;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const int n = cfg.n;
  const int grid = static_cast<int>(cfg.quota_grid.size());
  const std::uint64_t nblocks = (cfg.reps + kBlockSize - 1) / kBlockSize;
  const bool exact = cfg.estimator == Estimator::ExactPerGame;

  std::vector<BlockTally> slots(nblocks);
  for (auto& t : slots) {
    t.improper.assign(grid, 0);
    if (exact) {
      t.sum.assign(static_cast<std::size_t>(grid) * n, 0.0);
      t.sumsq.assign(static_cast<std::size_t>(grid) * n, 0.0);
    } else {
      t.counts.assign(static_cast<std::size_t>(grid) * n, 0);
    }
  }

  unsigned workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                      : static_cast<unsigned>(cfg.threads);
  workers = std::min<std::uint64_t>(workers, nblocks);

  auto worker_loop = [&](std::atomic<std::uint64_t>& next) {
    std::vector<double> buf_a(n), buf_b(n);
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      if (exact) {
        run_block_exact(cfg, b, slots[b], buf_a, buf_b);
      } else {
        run_block_one_perm(cfg, b, slots[b], buf_a, buf_b);
      }
    }
  };

  std::atomic<std::uint64_t> next{0};
  if (workers <= 1) {
    worker_loop(next);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back([&] { worker_loop(next); });
    for (auto& th : pool) th.join();
  }

  ExperimentResult out;
  out.config = cfg;
  out.means.assign(grid, std::vector<double>(n, 0.0));
  out.stderrs.assign(grid, std::vector<double>(n, 0.0));
  out.improper.assign(grid, 0);
  const double R = static_cast<double>(cfg.reps);

  for (int qi = 0; qi < grid; ++qi) {
    for (int r = 0; r < n; ++r) {
      const std::size_t cell = static_cast<std::size_t>(qi) * n + r;
      if (exact) {
        double s = 0.0, ss = 0.0;
        for (const auto& t : slots) {
          s += t.sum[cell];
          ss += t.sumsq[cell];
        }
        out.means[qi][r] = s / R;
        if (cfg.reps > 1) {
          const double var = std::max(0.0, (ss - s * s / R) / (R - 1.0));
          out.stderrs[qi][r] = std::sqrt(var / R);
        }
      } else {
        std::uint64_t c = 0;
        for (const auto& t : slots) c += t.counts[cell];
        const double p = static_cast<double>(c) / R;
        out.means[qi][r] = p;
        out.stderrs[qi][r] = std::sqrt(p * (1.0 - p) / R);
      }
    }
    for (const auto& t : slots) out.improper[qi] += t.improper[qi];
  }
  return out;
}

ExperimentResult profile_sweep(const ExperimentConfig& cfg) { return run_experiment(cfg); }

}  // namespace wvg
