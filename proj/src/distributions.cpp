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
#include "wvg/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "wvg/errors.hpp"
#include "wvg/format.hpp"
#include "wvg/quadrature.hpp"

namespace wvg {
namespace {

// Truncated-exponential moments in the scaled variable y = rate*x. Near y = 0
// the direct formulas lose all their digits to cancellation (numerator and
// denominator both vanish), so switch to the alternating series
//   int_0^y s^m e^{-s} ds = sum_k (-1)^k y^{k+m+1} / ((k+m+1) k!),
// whose terms shrink geometrically for y < 1/2.
double trunc_exp_integral(int m, double y) {
  if (y < 0.5) {
    double powk = std::pow(y, m + 1);  // y^{k+m+1} / k!
    double s = 0.0;
    for (int k = 0; k < 40; ++k) {
      const double term = (k % 2 == 0 ? powk : -powk) / (k + m + 1);
      s += term;
      if (std::abs(term) < 1e-17 * std::abs(s)) break;
      powk *= y / (k + 1);
    }
    return s;
  }
  const double ey = std::exp(-y);
  switch (m) {
    case 0:
      return -std::expm1(-y);
    case 1:
      return -std::expm1(-y) - y * ey;
    default:  // m == 2
      return 2.0 * (-std::expm1(-y) - y * ey) - y * y * ey;
  }
}

}  // namespace

WeightDistribution WeightDistribution::uniform(double a, double b) {
  if (!(a >= 0.0) || !(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ConfigError("uniform law needs 0 <= a < b");
  }
  return WeightDistribution(DistKind::Uniform, a, b, 0.0);
}

WeightDistribution WeightDistribution::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw ConfigError("exponential law needs rate > 0");
  }
  return WeightDistribution(DistKind::Exponential, 0.0, 0.0, rate);
}

double WeightDistribution::rate() const {
  if (kind_ != DistKind::Exponential) throw ConfigError("rate: law is not exponential");
  return rate_;
}

double WeightDistribution::pdf(double t) const {
  if (kind_ == DistKind::Uniform) {
    return (t >= a_ && t <= b_) ? 1.0 / (b_ - a_) : 0.0;
  }
  return t >= 0.0 ? rate_ * std::exp(-rate_ * t) : 0.0;
}

double WeightDistribution::cdf(double t) const {
  if (kind_ == DistKind::Uniform) {
    if (t <= a_) return 0.0;
    if (t >= b_) return 1.0;
    return (t - a_) / (b_ - a_);
  }
  return t <= 0.0 ? 0.0 : -std::expm1(-rate_ * t);
}

double WeightDistribution::survival(double t) const {
  if (kind_ == DistKind::Uniform) {
    if (t <= a_) return 1.0;
    if (t >= b_) return 0.0;
    return (b_ - t) / (b_ - a_);
  }
  return t <= 0.0 ? 1.0 : std::exp(-rate_ * t);
}

double WeightDistribution::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("quantile: u outside [0,1]");
  if (kind_ == DistKind::Uniform) return a_ + (b_ - a_) * u;
  return -std::log1p(-u) / rate_;
}

double WeightDistribution::mean() const {
  return kind_ == DistKind::Uniform ? 0.5 * (a_ + b_) : 1.0 / rate_;
}

double WeightDistribution::mean_below(double x) const {
  if (kind_ == DistKind::Uniform) {
    if (!(x > a_)) throw std::domain_error("mean_below: no mass at or under the threshold");
    return 0.5 * (a_ + std::min(x, b_));
  }
  if (!(x > 0.0)) throw std::domain_error("mean_below: no mass at or under the threshold");
  const double y = rate_ * x;
  return trunc_exp_integral(1, y) / trunc_exp_integral(0, y) / rate_;
}

double WeightDistribution::mean_above(double x) const {
  if (kind_ == DistKind::Uniform) {
    if (!(x < b_)) throw std::domain_error("mean_above: no mass at or over the threshold");
    return 0.5 * (std::max(x, a_) + b_);
  }
  if (!std::isfinite(x)) throw std::domain_error("mean_above: threshold must be finite");
  // memorylessness: the overshoot past max(x,0) is again Exponential(rate)
  return std::max(x, 0.0) + 1.0 / rate_;
}

SupportBounds WeightDistribution::support() const {
  if (kind_ == DistKind::Uniform) return {a_, SupportBounds::Tail::Finite, b_};
  return {0.0, SupportBounds::Tail::Infinite, 0.0};
}

double WeightDistribution::sample(SplitMix64& rng) const { return quantile(rng.next_unit()); }

std::string WeightDistribution::spec_string() const {
  if (kind_ == DistKind::Uniform) {
    return "uniform:" + format_double(a_) + "," + format_double(b_);
  }
  return "exp:" + format_double(rate_);
}

ConditionedLaw ConditionedLaw::full(const WeightDistribution& d) {
  return ConditionedLaw(d, Mode::Full, 0.0, 0.0);
}

ConditionedLaw ConditionedLaw::below(const WeightDistribution& d, double x) {
  const auto sup = d.support();
  if (!(x > sup.lower)) throw std::domain_error("below: threshold carries no mass");
  if (!std::isfinite(x)) throw std::domain_error("below: threshold must be finite");
  return ConditionedLaw(d, Mode::Below, x, 0.0);
}

ConditionedLaw ConditionedLaw::above(const WeightDistribution& d, double x) {
  const auto sup = d.support();
  if (sup.upper_kind == SupportBounds::Tail::Finite && !(x < sup.upper)) {
    throw std::domain_error("above: threshold carries no mass");
  }
  if (!std::isfinite(x)) throw std::domain_error("above: threshold must be finite");
  return ConditionedLaw(d, Mode::Above, x, 0.0);
}

ConditionedLaw ConditionedLaw::mixture(const WeightDistribution& d, double p, double x) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("mixture: weight p outside [0,1]");
  below(d, x);  // validate both sides of the split
  above(d, x);
  return ConditionedLaw(d, Mode::Mixture, x, p);
}

double ConditionedLaw::below_pdf(double t) const {
  if (base_.kind() == DistKind::Uniform) {
    const auto sup = base_.support();
    const double c = std::min(x_, sup.upper);
    return (t >= sup.lower && t <= c) ? 1.0 / (c - sup.lower) : 0.0;
  }
  if (t < 0.0 || t > x_) return 0.0;
  return base_.pdf(t) / -std::expm1(-base_.rate() * x_);
}

double ConditionedLaw::above_pdf(double t) const {
  if (base_.kind() == DistKind::Uniform) {
    const auto sup = base_.support();
    const double c = std::max(x_, sup.lower);
    return (t >= c && t <= sup.upper) ? 1.0 / (sup.upper - c) : 0.0;
  }
  // shifted form: dividing e^{-rate t} by the survival value underflows for
  // large thresholds, the difference in the exponent never does
  const double c = std::max(x_, 0.0);
  return t >= c ? base_.rate() * std::exp(-base_.rate() * (t - c)) : 0.0;
}

double ConditionedLaw::pdf(double t) const {
  switch (mode_) {
    case Mode::Full:
      return base_.pdf(t);
    case Mode::Below:
      return below_pdf(t);
    case Mode::Above:
      return above_pdf(t);
    case Mode::Mixture:
      return p_ * below_pdf(t) + (1.0 - p_) * above_pdf(t);
  }
  return 0.0;
}

double ConditionedLaw::cdf(double t) const {
  switch (mode_) {
    case Mode::Full:
      return base_.cdf(t);
    case Mode::Below: {
      // F(t | Y <= x) = F(min(t, x)) / F(x)
      if (t >= x_) return 1.0;
      return base_.cdf(t) / base_.cdf(x_);
    }
    case Mode::Above: {
      // F(t | Y > x) = (F(t) - F(x)) / S(x)
      if (t <= x_) return 0.0;
      const double v = (base_.cdf(t) - base_.cdf(x_)) / base_.survival(x_);
      return std::min(v, 1.0);
    }
    case Mode::Mixture: {
      double below = (t >= x_) ? 1.0 : base_.cdf(t) / base_.cdf(x_);
      double above =
          (t <= x_) ? 0.0
                    : std::min((base_.cdf(t) - base_.cdf(x_)) / base_.survival(x_), 1.0);
      return p_ * below + (1.0 - p_) * above;
    }
  }
  return 0.0;
}

double ConditionedLaw::below_quantile(double u) const {
  if (base_.kind() == DistKind::Uniform) {
    const auto sup = base_.support();
    const double c = std::min(x_, sup.upper);
    return sup.lower + u * (c - sup.lower);
  }
  const double mass = -std::expm1(-base_.rate() * x_);
  return -std::log1p(-u * mass) / base_.rate();
}

double ConditionedLaw::above_quantile(double u) const {
  if (base_.kind() == DistKind::Uniform) {
    const auto sup = base_.support();
    const double c = std::max(x_, sup.lower);
    return c + u * (sup.upper - c);
  }
  return std::max(x_, 0.0) - std::log1p(-u) / base_.rate();
}

double ConditionedLaw::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("quantile: u outside [0,1]");
  switch (mode_) {
    case Mode::Full:
      return base_.quantile(u);
    case Mode::Below:
      return below_quantile(u);
    case Mode::Above:
      return above_quantile(u);
    case Mode::Mixture:
      if (p_ > 0.0 && u <= p_) return below_quantile(u / p_);
      return above_quantile((u - p_) / (1.0 - p_));
  }
  return 0.0;
}

double ConditionedLaw::sample(SplitMix64& rng) const { return quantile(rng.next_unit()); }

double ConditionedLaw::mean() const {
  switch (mode_) {
    case Mode::Full:
      return base_.mean();
    case Mode::Below:
      return base_.mean_below(x_);
    case Mode::Above:
      return base_.mean_above(x_);
    case Mode::Mixture:
      return p_ * base_.mean_below(x_) + (1.0 - p_) * base_.mean_above(x_);
  }
  return 0.0;
}

double ConditionedLaw::second_moment() const {
  const auto sup = base_.support();
  switch (mode_) {
    case Mode::Full: {
      if (base_.kind() == DistKind::Uniform) {
        const double a = sup.lower, b = sup.upper;
        return (a * a + a * b + b * b) / 3.0;
      }
      return 2.0 / (base_.rate() * base_.rate());
    }
    case Mode::Below: {
      if (base_.kind() == DistKind::Uniform) {
        const double a = sup.lower, c = std::min(x_, sup.upper);
        return (a * a + a * c + c * c) / 3.0;
      }
      const double r = base_.rate();
      const double y = r * x_;
      return trunc_exp_integral(2, y) / trunc_exp_integral(0, y) / (r * r);
    }
    case Mode::Above: {
      if (base_.kind() == DistKind::Uniform) {
        const double c = std::max(x_, sup.lower), b = sup.upper;
        return (c * c + c * b + b * b) / 3.0;
      }
      const double r = base_.rate();
      const double c = std::max(x_, 0.0);
      return c * c + 2.0 * c / r + 2.0 / (r * r);
    }
    case Mode::Mixture: {
      // by quadrature over the two continuous pieces of the mixture density
      QuadOptions opts;
      opts.rel_tol = 1e-10;
      auto integrand = [this](double t) { return t * t * pdf(t); };
      const QuadResult lowpart = integrate(integrand, sup.lower, x_, opts);
      QuadResult highpart;
      if (sup.upper_kind == SupportBounds::Tail::Finite) {
        highpart = integrate(integrand, x_, sup.upper, opts);
      } else {
        highpart = integrate_to_infinity(integrand, x_, 0.5 * base_.rate(), opts);
      }
      return lowpart.value + highpart.value;
    }
  }
  return 0.0;
}

SupportBounds ConditionedLaw::support() const {
  const auto sup = base_.support();
  switch (mode_) {
    case Mode::Full:
    case Mode::Mixture:
      return sup;
    case Mode::Below: {
      const double hi = sup.upper_kind == SupportBounds::Tail::Finite
                            ? std::min(x_, sup.upper)
                            : x_;
      return {sup.lower, SupportBounds::Tail::Finite, hi};
    }
    case Mode::Above:
      return {std::max(x_, sup.lower), sup.upper_kind, sup.upper};
  }
  return sup;
}

std::string ConditionedLaw::describe() const {
  switch (mode_) {
    case Mode::Full:
      return "full";
    case Mode::Below:
      return "below:" + format_double(x_);
    case Mode::Above:
      return "above:" + format_double(x_);
    case Mode::Mixture:
      return "mixture:" + format_double(p_) + "," + format_double(x_);
  }
  return "full";
}

std::function<double(double)> extreme_order_density(const WeightDistribution& d, int n,
                                                    Extreme which) {
  if (n < 1) throw ConfigError("extreme_order_density: n must be at least 1");
  if (which == Extreme::Max) {
    return [d, n](double t) {
      return n * std::pow(d.cdf(t), n - 1) * d.pdf(t);
    };
  }
  return [d, n](double t) {
    return n * std::pow(d.survival(t), n - 1) * d.pdf(t);
  };
}

namespace {

double parse_strict_double(std::string_view tok) {
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw ConfigError("distribution spec: bad number '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

WeightDistribution parse_dist_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("distribution spec must look like uniform:a,b or exp:rate");
  }
  const std::string_view name = spec.substr(0, colon);
  const std::string_view args = spec.substr(colon + 1);
  if (name == "uniform") {
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) {
      throw ConfigError("uniform spec needs two comma-separated bounds");
    }
    const double a = parse_strict_double(args.substr(0, comma));
    const double b = parse_strict_double(args.substr(comma + 1));
    return WeightDistribution::uniform(a, b);
  }
  if (name == "exp") {
    return WeightDistribution::exponential(parse_strict_double(args));
  }
  throw ConfigError("unknown distribution '" + std::string(name) + "'");
}

}  // namespace wvg
