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

#include "wvg/distributions.hpp"

namespace wvg {

// Counting statistics for the running-sum process S_0 = 0, S_k = S_{k-1} + Y_k
// with i.i.d. positive steps Y.  The count of interest is the number of partial
// sums strictly below a threshold Q, which is 1 + #{k >= 1 : S_k < Q} for Q > 0
// and 0 otherwise.

struct RenewalEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t reps = 0;
};

// Simulated mean count of partial sums below `quota`.
RenewalEstimate renewal_mc(const ConditionedLaw& law, double quota,
                           std::uint64_t reps, std::uint64_t seed);

// Second-order expansion of the mean count: Q / E[Y] + E[Y^2] / (2 E[Y]^2).
// The truncation error decays exponentially in Q for the laws handled here.
double renewal_asymptote(const ConditionedLaw& law, double quota);

// Simulated mean number of partial sums landing in [quota - width, quota).
// Requires 0 <= width <= quota.
RenewalEstimate interval_count(const ConditionedLaw& law, double quota,
                               double width, std::uint64_t reps,
                               std::uint64_t seed);

// Deterministic evaluation of the mean count via the defining integral
// equation, marched on a uniform grid of the given step.  Needs a step law
// with bounded support.  Cost grows with quota / step, so batch thresholds
// through the grid overload when several values are needed.
double renewal_convolve(const ConditionedLaw& law, double quota,
                        double step = 1e-4);
std::vector<double> renewal_convolve_grid(const ConditionedLaw& law,
                                          const std::vector<double>& quotas,
                                          double step = 1e-4);

// Simulated counts across a threshold grid with the residual against the
// second-order asymptote.  A point is resolvable when its residual exceeds
// five standard errors; `decay_slope` is the least-squares slope of
// log|residual| against the threshold over resolvable points.
struct RenewalSummary {
  std::vector<double> quotas;
  std::vector<RenewalEstimate> estimates;
  std::vector<double> asymptotes;
  std::vector<double> residuals;
  double decay_slope = 0.0;
  int resolvable_points = 0;
  bool decay_consistent = false;
};

// Requires at least four strictly increasing positive thresholds.
RenewalSummary residual_decay_report(const ConditionedLaw& law,
                                     const std::vector<double>& quota_grid,
                                     std::uint64_t reps, std::uint64_t seed);

}  // namespace wvg
