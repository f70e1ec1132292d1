// Copyright 2026 The zsl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "zsl/stats.h"

#include <cmath>
#include <limits>

#include "zsl/error.h"

namespace zsl {

double Mean(std::span<const double> values) {
  if (values.empty()) throw DataError("mean of an empty sequence");
  // Running mean, so a constant sequence has exactly that mean.
  double mean = 0.0;
  size_t n = 0;
  for (double v : values) mean += (v - mean) / static_cast<double>(++n);
  return mean;
}

double SampleStd(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mean = Mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

RunStatistics SummarizeRuns(const std::string& method,
                            std::span<const double> per_seed_top1) {
  if (per_seed_top1.empty()) {
    throw DataError("no runs to summarize for '" + method + "'");
  }
  for (double v : per_seed_top1) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DataError("accuracy outside [0, 1] for '" + method + "'");
    }
  }
  RunStatistics stats;
  stats.method = method;
  stats.per_seed_top1.assign(per_seed_top1.begin(), per_seed_top1.end());
  stats.mean = Mean(per_seed_top1);
  stats.std = SampleStd(per_seed_top1);
  stats.degenerate = per_seed_top1.size() == 1;
  return stats;
}

TTestResult PooledTTestFromSummary(double mean_a, double std_a, int n_a,
                                   double mean_b, double std_b, int n_b,
                                   double alpha) {
  if (n_a < 2 || n_b < 2) {
    throw DataError("t-test needs at least two values per group");
  }
  TTestResult r;
  r.degrees_of_freedom = n_a + n_b - 2;
  const double pooled_var =
      ((n_a - 1) * std_a * std_a + (n_b - 1) * std_b * std_b) /
      r.degrees_of_freedom;
  const double diff = mean_a - mean_b;
  if (pooled_var == 0.0) {
    if (diff == 0.0) {
      r.t_statistic = 0.0;
      r.p_value = 1.0;
    } else {
      r.t_statistic = std::copysign(std::numeric_limits<double>::infinity(), diff);
      r.p_value = 0.0;
      r.degenerate = true;
    }
  } else {
    const double se = std::sqrt(pooled_var * (1.0 / n_a + 1.0 / n_b));
    r.t_statistic = diff / se;
    r.p_value = StudentTTwoSidedP(r.t_statistic, r.degrees_of_freedom);
  }
  r.significant = r.p_value < alpha;
  return r;
}

TTestResult UnpairedTTest(std::span<const double> group_a,
                          std::span<const double> group_b, double alpha) {
  if (group_a.size() < 2 || group_b.size() < 2) {
    throw DataError("t-test needs at least two values per group");
  }
  return PooledTTestFromSummary(Mean(group_a), SampleStd(group_a),
                                static_cast<int>(group_a.size()),
                                Mean(group_b), SampleStd(group_b),
                                static_cast<int>(group_b.size()), alpha);
}

namespace {

// Continued fraction for I_x(a, b), valid for x < (a + 1) / (a + b + 2).
double BetaContinuedFraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) return h;
  }
  throw NumericError("incomplete beta continued fraction did not converge");
}

}  // namespace

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw NumericError("incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw NumericError("incomplete beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double StudentTTwoSidedP(double t, double df) {
  if (!(df > 0.0)) throw NumericError("degrees of freedom must be positive");
  if (std::isinf(t)) return 0.0;
  if (std::isnan(t)) throw NumericError("t statistic is NaN");
  const double x = df / (df + t * t);
  return RegularizedIncompleteBeta(df / 2.0, 0.5, x);
}

double StudentTCdf(double t, double df) {
  const double tail = 0.5 * StudentTTwoSidedP(t, df);
  return t >= 0.0 ? 1.0 - tail : tail;
}

}  // namespace zsl
