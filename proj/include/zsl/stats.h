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

#ifndef ZSL_STATS_H_
#define ZSL_STATS_H_

#include <span>
#include <string>
#include <vector>

namespace zsl {

struct RunStatistics {
  std::string method;
  std::vector<double> per_seed_top1;
  double mean = 0.0;
  double std = 0.0;         // sample standard deviation (divisor n - 1)
  bool degenerate = false;  // n == 1: std reported as 0
};

struct TTestResult {
  double t_statistic = 0.0;
  int degrees_of_freedom = 0;  // n_a + n_b - 2
  double p_value = 1.0;        // two-sided
  bool significant = false;    // p_value < alpha
  bool degenerate = false;     // zero pooled variance with unequal means
};

inline constexpr double kSignificanceLevel = 0.05;

// Mean and sample standard deviation of per-seed accuracies. Throws
// DataError on empty input or values outside [0, 1].
RunStatistics SummarizeRuns(const std::string& method,
                            std::span<const double> per_seed_top1);

double Mean(std::span<const double> values);
// Sample standard deviation; 0 for fewer than two values.
double SampleStd(std::span<const double> values);

// Student's two-sample t-test with pooled variance:
//   s_p^2 = ((n_a-1) s_a^2 + (n_b-1) s_b^2) / (n_a + n_b - 2)
//   t     = (mean_a - mean_b) / (s_p sqrt(1/n_a + 1/n_b))
// with a two-sided p-value. Zero pooled variance gives t = 0, p = 1 for equal
// means and t = +-inf, p = 0 (flagged degenerate) otherwise. Throws
// DataError if a group has fewer than two values.
TTestResult UnpairedTTest(std::span<const double> group_a,
                          std::span<const double> group_b,
                          double alpha = kSignificanceLevel);

// Same test from summary statistics (sample standard deviations).
TTestResult PooledTTestFromSummary(double mean_a, double std_a, int n_a,
                                   double mean_b, double std_b, int n_b,
                                   double alpha = kSignificanceLevel);

// Regularized incomplete beta I_x(a, b), continued fraction (modified Lentz).
double RegularizedIncompleteBeta(double a, double b, double x);

// CDF of Student's t with df degrees of freedom.
double StudentTCdf(double t, double df);

// P(|T| >= |t|) = I_{df/(df+t^2)}(df/2, 1/2).
double StudentTTwoSidedP(double t, double df);

}  // namespace zsl

#endif  // ZSL_STATS_H_
