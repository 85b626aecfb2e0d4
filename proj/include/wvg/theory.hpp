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

#include "wvg/distributions.hpp"

namespace wvg {

enum class PredictionForm { Quadrature, Series, Asymptotic, Limit };
enum class PredictionTarget { MaxRank, MinRank, Rank };

// A theoretical value for an expected rank-indexed power index, together with
// how it was obtained and where it applies. The quota range [quota_lo,
// quota_hi] is in natural (absolute) units; within it the value does not
// depend on the quota, up to an error term that vanishes super-polynomially
// in n.
struct Prediction {
  double value = 0.0;
  PredictionForm form = PredictionForm::Quadrature;
  PredictionTarget target = PredictionTarget::MaxRank;
  int n = 0;       // 0 when the prediction is an n -> infinity limit
  double p = 0.0;  // rank fraction, Rank target only
  int series_terms = 0;
  double tolerance = 0.0;  // quadrature error estimate, or requested series tol
  double quota_lo = 0.0;
  double quota_hi = 0.0;
};

// E[value of the top-ranked agent] = (1/n) E_{x ~ n-maximum}[x / E[X | X<=x]],
// by adaptive quadrature at relative tolerance 1e-9. n >= 2.
Prediction predict_max_expected(const WeightDistribution& d, int n);

// Mirror for the lowest rank: (1/n) E_{x ~ n-minimum}[x / E[X | X>=x]].
Prediction predict_min_expected(const WeightDistribution& d, int n);

// n -> infinity limits of the scaled extreme values: upper support edge over
// the mean (infinite for the exponential law) and lower edge over the mean.
struct LimitPair {
  double limit_max = 0.0;  // meaningful only when !max_is_infinite
  bool max_is_infinite = false;
  double limit_min = 0.0;
};
LimitPair limit_values(const WeightDistribution& d);

// Series form of the uniform-law predictors:
//   max: (2b/(a+b))/n - (2a/(a+b)) * sum_{d>=1} r^d d!/(n(n+1)...(n+d)),
// with r = (b-a)/(a+b); min is the same expression with a and b swapped.
// Terms stop once below tol*|partial| and below 1e-16 absolute; more than
// 10^4 terms raises ConvergenceError.
Prediction uniform_series_max(double a, double b, int n, double tol);
Prediction uniform_series_min(double a, double b, int n, double tol);

// Closed forms for the Exponential(1) law. i_n = H_{n+1}/(n+1) is the leading
// term of the top-rank integral; min_integral = 1/n - e^n E1(n) is the exact
// bottom-rank integral; the asymptotics are (ln n + gamma)/n and 1/n^2.
// n = 0 is allowed for i_n; the other fields are infinite there.
struct ExpFormulas {
  double i_n = 0.0;
  double min_integral = 0.0;
  double max_asymptotic = 0.0;
  double min_asymptotic = 0.0;
};
ExpFormulas exp_formulas(int n);

// lim n E[value of rank floor(pn)] = F^{-1}(p)/E[X], for p in (0,1).
double predict_rank_limit(const WeightDistribution& d, double p);

// The positive correction sum
//   J_n = (1/((n+1)(n+2))) sum_{i=0}^n [2 H_i/(i+2) - (i^2-i-4)/((i+1)(i+2)^2)],
// of order log^2 n / n^2.
double jn_value(int n);

}  // namespace wvg
