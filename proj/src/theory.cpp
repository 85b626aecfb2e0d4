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
#include "wvg/theory.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "wvg/errors.hpp"
#include "wvg/quadrature.hpp"
#include "wvg/special.hpp"

namespace wvg {
namespace {

// Quota range on which the extreme-rank formulas hold: [n^{1/4},
// (n - n^{2/3}) E[X]]. Outside it the error term is uncontrolled.
void fill_quota_range(Prediction& p, const WeightDistribution& d, int n) {
  p.quota_lo = std::pow(static_cast<double>(n), 0.25);
  p.quota_hi = (n - std::pow(static_cast<double>(n), 2.0 / 3.0)) * d.mean();
}

}  // namespace

Prediction predict_max_expected(const WeightDistribution& d, int n) {
  if (n < 2) throw ConfigError("predict_max_expected: n must be at least 2");
  const auto sup = d.support();
  auto density = extreme_order_density(d, n, Extreme::Max);
  // The n-maximum density vanishes at the lower support edge for n >= 2, so
  // the 0/0 ratio there never contributes; guard it to zero outright.
  auto integrand = [&](double x) {
    if (x <= sup.lower) return 0.0;
    return density(x) * x / d.mean_below(x);
  };
  QuadOptions opts;
  opts.rel_tol = 1e-9;
  QuadResult r;
  if (sup.upper_kind == SupportBounds::Tail::Finite) {
    r = integrate(integrand, sup.lower, sup.upper, opts);
  } else {
    r = integrate_to_infinity(integrand, 0.0, 0.5 * d.rate(), opts);
  }
  Prediction out;
  out.value = r.value / n;
  out.form = PredictionForm::Quadrature;
  out.target = PredictionTarget::MaxRank;
  out.n = n;
  out.tolerance = r.error_estimate / n;
  fill_quota_range(out, d, n);
  return out;
}

Prediction predict_min_expected(const WeightDistribution& d, int n) {
  if (n < 2) throw ConfigError("predict_min_expected: n must be at least 2");
  const auto sup = d.support();
  auto density = extreme_order_density(d, n, Extreme::Min);
  auto integrand = [&](double x) {
    if (x <= sup.lower) return 0.0;
    if (sup.upper_kind == SupportBounds::Tail::Finite && x >= sup.upper) return 0.0;
    return density(x) * x / d.mean_above(x);
  };
  QuadOptions opts;
  opts.rel_tol = 1e-9;
  QuadResult r;
  if (sup.upper_kind == SupportBounds::Tail::Finite) {
    r = integrate(integrand, sup.lower, sup.upper, opts);
  } else {
    // the n-minimum of exponential draws is Exponential(n * rate)
    r = integrate_to_infinity(integrand, 0.0, 0.5 * n * d.rate(), opts);
  }
  Prediction out;
  out.value = r.value / n;
  out.form = PredictionForm::Quadrature;
  out.target = PredictionTarget::MinRank;
  out.n = n;
  out.tolerance = r.error_estimate / n;
  fill_quota_range(out, d, n);
  return out;
}

LimitPair limit_values(const WeightDistribution& d) {
  const auto sup = d.support();
  LimitPair out;
  out.limit_min = sup.lower / d.mean();
  if (sup.upper_kind == SupportBounds::Tail::Infinite) {
    out.max_is_infinite = true;
  } else {
    out.limit_max = sup.upper / d.mean();
  }
  return out;
}

namespace {

Prediction uniform_series(double lead_edge, double other_edge, int n, double tol,
                          PredictionTarget target) {
  // lead_edge is b for the max series, a for the min series; the correction
  // ratio r = (lead_edge - other_edge)/(a+b) then alternates for the min.
  const double s = lead_edge + other_edge;
  const double ratio = (lead_edge - other_edge) / s;
  Prediction out;
  out.form = PredictionForm::Series;
  out.target = target;
  out.n = n;
  out.tolerance = tol;
  out.quota_lo = std::pow(static_cast<double>(n), 0.25);
  out.quota_hi = (n - std::pow(static_cast<double>(n), 2.0 / 3.0)) * (s / 2.0);
  const double lead = (2.0 * lead_edge / s) / n;
  if (lead_edge == other_edge || other_edge == 0.0) {
    // zero coefficient: every correction term vanishes
    out.value = lead;
    return out;
  }
  double term = 1.0 / n;  // d = 0 value of d!/(n...(n+d))
  double sum = 0.0;
  int d = 0;
  for (;;) {
    ++d;
    if (d > 10000) {
      throw ConvergenceError("uniform series: term cap reached before the tolerance");
    }
    term *= ratio * static_cast<double>(d) / (n + d);
    sum += term;
    if (std::abs(term) < tol * std::abs(sum) && std::abs(term) < 1e-16) break;
  }
  out.series_terms = d;
  out.value = lead - (2.0 * other_edge / s) * sum;
  return out;
}

}  // namespace

Prediction uniform_series_max(double a, double b, int n, double tol) {
  if (!(a >= 0.0 && b > a)) throw ConfigError("uniform series: needs 0 <= a < b");
  if (!(tol > 0.0)) throw ConfigError("uniform series: tolerance must be positive");
  if (n < 1) throw ConfigError("uniform series: n must be at least 1");
  return uniform_series(b, a, n, tol, PredictionTarget::MaxRank);
}

Prediction uniform_series_min(double a, double b, int n, double tol) {
  if (!(a >= 0.0 && b > a)) throw ConfigError("uniform series: needs 0 <= a < b");
  if (!(tol > 0.0)) throw ConfigError("uniform series: tolerance must be positive");
  if (n < 1) throw ConfigError("uniform series: n must be at least 1");
  return uniform_series(a, b, n, tol, PredictionTarget::MinRank);
}

ExpFormulas exp_formulas(int n) {
  if (n < 0) throw ConfigError("exp_formulas: n must be non-negative");
  ExpFormulas out;
  out.i_n = harmonic(n + 1) / (n + 1);
  if (n == 0) {
    out.min_integral = std::numeric_limits<double>::infinity();
    out.max_asymptotic = std::numeric_limits<double>::infinity();
    out.min_asymptotic = std::numeric_limits<double>::infinity();
    return out;
  }
  const double nd = static_cast<double>(n);
  out.min_integral = 1.0 / nd - exp1_scaled(nd);
  out.max_asymptotic = (std::log(nd) + std::numbers::egamma) / nd;
  out.min_asymptotic = 1.0 / (nd * nd);
  return out;
}

double predict_rank_limit(const WeightDistribution& d, double p) {
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("predict_rank_limit: p must lie in (0,1)");
  return d.quantile(p) / d.mean();
}

double jn_value(int n) {
  if (n < 0) throw ConfigError("jn_value: n must be non-negative");
  double h = 0.0;  // running H_i
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    if (i > 0) h += 1.0 / i;
    const double i2 = static_cast<double>(i) * i;
    sum += 2.0 * h / (i + 2) - (i2 - i - 4.0) / ((i + 1.0) * (i + 2.0) * (i + 2.0));
  }
  return sum / ((n + 1.0) * (n + 2.0));
}

}  // namespace wvg
