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
#include <string>
#include <string_view>

#include "wvg/rng.hpp"

namespace wvg {

enum class DistKind { Uniform, Exponential };
enum class Extreme { Max, Min };

// Support interval with an explicit marker for an unbounded upper end; `upper`
// is meaningful only when upper_kind == Finite.
struct SupportBounds {
  enum class Tail { Finite, Infinite };
  double lower = 0.0;
  Tail upper_kind = Tail::Finite;
  double upper = 0.0;
};

// One of the two weight laws: Uniform(a,b) with 0 <= a < b, or
// Exponential(rate) with rate > 0. Value type, cheap to copy.
class WeightDistribution {
 public:
  static WeightDistribution uniform(double a, double b);
  static WeightDistribution exponential(double rate);

  DistKind kind() const { return kind_; }
  // Exponential only; ConfigError for the uniform law.
  double rate() const;

  double pdf(double t) const;
  double cdf(double t) const;
  double survival(double t) const;
  // u in [0,1]; quantile(1) of the exponential law is +infinity.
  double quantile(double u) const;
  double mean() const;
  // E[X | X <= x]; domain error when P(X <= x) = 0.
  double mean_below(double x) const;
  // E[X | X >= x]; domain error when P(X >= x) = 0.
  double mean_above(double x) const;
  SupportBounds support() const;
  double sample(SplitMix64& rng) const;
  // Round-trips through parse_dist_spec: "uniform:a,b" or "exp:rate".
  std::string spec_string() const;

 private:
  WeightDistribution(DistKind k, double a, double b, double rate)
      : kind_(k), a_(a), b_(b), rate_(rate) {}
  DistKind kind_;
  double a_, b_, rate_;
};

// A weight law conditioned on its position relative to a threshold x: the law
// itself (full), X | X <= x (below), X | X >= x (above), or the two-sided
// mixture that puts mass p on the below part.
class ConditionedLaw {
 public:
  enum class Mode { Full, Below, Above, Mixture };

  static ConditionedLaw full(const WeightDistribution& d);
  // Requires P(X <= x) > 0; throws std::domain_error otherwise.
  static ConditionedLaw below(const WeightDistribution& d, double x);
  // Requires P(X >= x) > 0; throws std::domain_error otherwise. A threshold
  // at or under the lower support edge conditions on nothing.
  static ConditionedLaw above(const WeightDistribution& d, double x);
  // Requires x strictly inside the support and p in [0,1].
  static ConditionedLaw mixture(const WeightDistribution& d, double p, double x);

  Mode mode() const { return mode_; }
  const WeightDistribution& base() const { return base_; }
  double threshold() const { return x_; }
  double mass_below() const { return p_; }

  double pdf(double t) const;
  double cdf(double t) const;
  double quantile(double u) const;
  double sample(SplitMix64& rng) const;
  double mean() const;
  double second_moment() const;
  SupportBounds support() const;
  // "full", "below:x", "above:x", or "mixture:p,x".
  std::string describe() const;

 private:
  ConditionedLaw(const WeightDistribution& base, Mode mode, double x, double p)
      : base_(base), mode_(mode), x_(x), p_(p) {}
  double below_pdf(double t) const;
  double above_pdf(double t) const;
  double below_quantile(double u) const;
  double above_quantile(double u) const;

  WeightDistribution base_;
  Mode mode_;
  double x_;
  double p_;
};

// Density of the largest (Max) or smallest (Min) of n independent draws:
// n F^{n-1} f or n (1-F)^{n-1} f. n >= 1.
std::function<double(double)> extreme_order_density(const WeightDistribution& d, int n,
                                                    Extreme which);

// Strict parser for "uniform:a,b" / "exp:rate". Anything else, including
// trailing characters, is a ConfigError.
WeightDistribution parse_dist_spec(std::string_view spec);

}  // namespace wvg
