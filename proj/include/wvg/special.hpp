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

namespace wvg {

// H_n = sum_{k=1}^n 1/k; harmonic(0) == 0.
double harmonic(int n);

// e^x * E1(x) for x > 0, where E1 is the exponential integral
// int_x^inf e^{-t}/t dt. The scaled form stays O(1/x) for large x instead of
// underflowing. Throws ConfigError for x <= 0.
double exp1_scaled(double x);

}  // namespace wvg
