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
#include "wvg/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "wvg/errors.hpp"
#include "wvg/rng.hpp"

namespace wvg {
namespace {

constexpr std::uint64_t kMaxDrawsPerRep = 10'000'000;

void check_common(double quota, std::uint64_t reps) {
  if (!std::isfinite(quota)) throw ConfigError("threshold must be finite");
  if (reps == 0) throw ConfigError("need at least one replication");
}

[[noreturn]] void throw_runaway() {
  throw ConvergenceError(
      "replication exceeded 10^7 draws without reaching the threshold");
}

// Runs `reps` replications and returns the sample mean and its standard error.
// Replication r draws from substream(seed, r), so a shared seed replays the
// same step sequences across calls even though each replication consumes a
// variable number of draws.  `per_rep` returns the replication's count.
template <typename PerRep>
RenewalEstimate run_reps(std::uint64_t reps, std::uint64_t seed, PerRep per_rep) {
  double sum = 0.0;
  double sumsq = 0.0;
  for (std::uint64_t r = 0; r < reps; ++r) {
    SplitMix64 rng = substream(seed, r);
    const double c = per_rep(rng);
    sum += c;
    sumsq += c * c;
  }
  RenewalEstimate est;
  est.reps = reps;
  est.mean = sum / static_cast<double>(reps);
  if (reps > 1) {
    const double r = static_cast<double>(reps);
    const double var = std::max(0.0, (sumsq - sum * sum / r) / (r - 1.0));
    est.std_error = std::sqrt(var / r);
  }
  return est;
}

}  // namespace

RenewalEstimate renewal_mc(const ConditionedLaw& law, double quota,
                           std::uint64_t reps, std::uint64_t seed) {
  check_common(quota, reps);
  return run_reps(reps, seed, [&](SplitMix64& rng) {
    double s = 0.0;
    std::uint64_t count = 0;
    while (s < quota) {
      if (++count > kMaxDrawsPerRep) throw_runaway();
      s += law.sample(rng);
    }
    return static_cast<double>(count);
  });
}

double renewal_asymptote(const ConditionedLaw& law, double quota) {
  if (!std::isfinite(quota)) throw ConfigError("threshold must be finite");
  const double m1 = law.mean();
  const double m2 = law.second_moment();
  return quota / m1 + m2 / (2.0 * m1 * m1);
}

RenewalEstimate interval_count(const ConditionedLaw& law, double quota,
                               double width, std::uint64_t reps,
                               std::uint64_t seed) {
  check_common(quota, reps);
  if (quota < 0.0) throw ConfigError("threshold must be non-negative");
  if (!std::isfinite(width) || width < 0.0 || width > quota) {
    throw ConfigError("window width must satisfy 0 <= width <= threshold");
  }
  const double lo = quota - width;
  return run_reps(reps, seed, [&](SplitMix64& rng) {
    double s = 0.0;
    std::uint64_t count = 0;
    std::uint64_t draws = 0;
    while (s < quota) {
      if (s >= lo) ++count;
      if (++draws > kMaxDrawsPerRep) throw_runaway();
      s += law.sample(rng);
    }
    return static_cast<double>(count);
  });
}

std::vector<double> renewal_convolve_grid(const ConditionedLaw& law,
                                          const std::vector<double>& quotas,
                                          double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ConfigError("grid step must be positive");
  }
  const auto sup = law.support();
  if (sup.upper_kind != SupportBounds::Tail::Finite) {
    throw ConfigError("grid convolution needs a step law with bounded support");
  }
  if (quotas.empty()) throw ConfigError("need at least one threshold");
  double max_q = 0.0;
  for (double q : quotas) {
    if (!std::isfinite(q)) throw ConfigError("threshold must be finite");
    max_q = std::max(max_q, q);
  }

  std::vector<double> out(quotas.size(), 0.0);
  if (max_q <= 0.0) return out;

  // H(t) = E #{k >= 1 : S_k <= t} solves H = F + F * H.  March it on the grid
  // t_j = j h, discretizing the convolution in the step measure: cell i of the
  // step law carries mass dF_i = F(ih) - F((i-1)h), and H at the cell midpoint
  // is averaged from its two neighbors.  The i = 1 term involves H_j itself,
  // which the update solves for.  The count requested is 1 + H(Q-), and H is
  // continuous here.
  const std::size_t n_steps =
      static_cast<std::size_t>(std::floor(max_q / step)) + 1;
  const std::size_t kernel_cells = std::min(
      n_steps, static_cast<std::size_t>(std::ceil(sup.upper / step)) + 1);

  std::vector<double> mass(kernel_cells + 1, 0.0);
  double prev_cdf = law.cdf(0.0);
  for (std::size_t i = 1; i <= kernel_cells; ++i) {
    const double cur = law.cdf(static_cast<double>(i) * step);
    mass[i] = cur - prev_cdf;
    prev_cdf = cur;
  }

  std::vector<double> h(n_steps + 1, 0.0);
  std::vector<double> pair_sum(n_steps + 1, 0.0);  // pair_sum[k] = h[k] + h[k+1]
  for (std::size_t j = 1; j <= n_steps; ++j) {
    const double t = static_cast<double>(j) * step;
    const std::size_t m = std::min(j, kernel_cells);
    double acc = 0.0;
    for (std::size_t i = 2; i <= m; ++i) {
      acc += mass[i] * pair_sum[j - i];
    }
    const double rhs = law.cdf(t) + 0.5 * (acc + mass[1] * h[j - 1]);
    h[j] = rhs / (1.0 - 0.5 * mass[1]);
    pair_sum[j - 1] = h[j - 1] + h[j];
  }

  for (std::size_t k = 0; k < quotas.size(); ++k) {
    const double q = quotas[k];
    if (q <= 0.0) continue;
    const double pos = q / step;
    std::size_t j = std::min(static_cast<std::size_t>(pos), n_steps - 1);
    const double frac = pos - static_cast<double>(j);
    out[k] = 1.0 + h[j] + frac * (h[j + 1] - h[j]);
  }
  return out;
}

double renewal_convolve(const ConditionedLaw& law, double quota, double step) {
  return renewal_convolve_grid(law, {quota}, step)[0];
}

RenewalSummary residual_decay_report(const ConditionedLaw& law,
                                     const std::vector<double>& quota_grid,
                                     std::uint64_t reps, std::uint64_t seed) {
  if (quota_grid.size() < 4) {
    throw ConfigError("residual report needs at least four thresholds");
  }
  for (std::size_t i = 0; i < quota_grid.size(); ++i) {
    if (!std::isfinite(quota_grid[i]) || quota_grid[i] <= 0.0) {
      throw ConfigError("thresholds must be positive and finite");
    }
    if (i > 0 && quota_grid[i] <= quota_grid[i - 1]) {
      throw ConfigError("thresholds must be strictly increasing");
    }
  }

  RenewalSummary rep;
  rep.quotas = quota_grid;
  for (double q : quota_grid) {
    rep.estimates.push_back(renewal_mc(law, q, reps, seed));
    rep.asymptotes.push_back(renewal_asymptote(law, q));
    rep.residuals.push_back(rep.estimates.back().mean - rep.asymptotes.back());
  }

  // Least-squares slope of log|residual| over the points that stand clear of
  // their own sampling noise.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < quota_grid.size(); ++i) {
    const double res = rep.residuals[i];
    if (std::fabs(res) <= 5.0 * rep.estimates[i].std_error) continue;
    ++rep.resolvable_points;
    const double x = quota_grid[i];
    const double y = std::log(std::fabs(res));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  if (rep.resolvable_points >= 2) {
    const double n = rep.resolvable_points;
    rep.decay_slope = (sxy - sx * sy / n) / (sxx - sx * sx / n);
    rep.decay_consistent = rep.decay_slope < 0.0;
  } else {
    rep.decay_consistent = true;  // nothing resolves, nothing contradicts decay
  }
  return rep;
}

}  // namespace wvg
