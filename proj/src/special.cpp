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
#include "wvg/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "wvg/errors.hpp"

namespace wvg {

double harmonic(int n) {
  if (n < 0) throw ConfigError("harmonic: order must be non-negative");
  double h = 0.0;
  for (int k = n; k >= 1; --k) h += 1.0 / k;  // small terms first
  return h;
}

double exp1_scaled(double x) {
  if (!(x > 0.0)) throw ConfigError("exp1_scaled: argument must be positive");
  if (x <= 1.5) {
    // Maclaurin form E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k/(k k!).
    // Alternating with rapidly shrinking terms on this range; no cancellation
    // problem because x stays small.
    double pk = 1.0;  // (-x)^k / k!
    double s = 0.0;
    for (int k = 1; k < 64; ++k) {
      pk *= -x / k;
      const double term = -pk / k;
      s += term;
      if (std::abs(term) < 1e-18 * (std::abs(s) + 1.0)) break;
    }
    return std::exp(x) * (-std::numbers::egamma - std::log(x) + s);
  }
  // Continued fraction e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...))), evaluated
  // with the modified Lentz algorithm. Converges fast for x above ~1.
  const double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 200; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < std::numeric_limits<double>::epsilon()) return h;
  }
  throw ConvergenceError("exp1_scaled: continued fraction failed to converge");
}

}  // namespace wvg
