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

#include <functional>

namespace wvg {

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_intervals = 2000;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};

// Adaptive Gauss-Kronrod 7-15 on [a, b]. Bisects the interval with the worst
// error estimate until the global estimate satisfies
// err <= max(abs_tol, rel_tol * |value|); throws ConvergenceError if the
// interval budget runs out first.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opts = {});

// Integral over [x0, +inf) via the substitution x = x0 - log(1-u)/decay_scale,
// u in (0,1). decay_scale should undershoot the integrand's exponential decay
// rate (half of it is a good default) so the transformed integrand stays tame
// near u = 1.
QuadResult integrate_to_infinity(const std::function<double(double)>& f, double x0,
                                 double decay_scale, const QuadOptions& opts = {});

}  // namespace wvg
