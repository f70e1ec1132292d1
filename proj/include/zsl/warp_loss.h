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

#ifndef ZSL_WARP_LOSS_H_
#define ZSL_WARP_LOSS_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "zsl/embedding.h"
#include "zsl/projection.h"

namespace zsl {

// Rank-to-loss transform beta(r) = sum_{i=1..r} alpha_i. The default uses
// alpha_i = 1/i. An explicit override must be non-increasing and
// non-negative; alpha_i = 0 past its end.
class RankPenalty {
 public:
  RankPenalty() = default;
  // Throws ConfigError if alphas increase anywhere or go negative.
  explicit RankPenalty(std::vector<double> alphas);

  double Alpha(size_t i) const;  // i >= 1
  double Beta(size_t r) const;
  // beta(r) / r, with 0/0 = 0 at r = 0.
  double Weight(size_t r) const;

 private:
  std::vector<double> alphas_;
  bool harmonic_ = true;
};

// How r_{y_n} is measured.
//   kMarginViolating  number of y != y_n whose hinge term is positive
//   kSortedPosition   number of y != y_n scoring strictly above y_n
enum class RankMode { kMarginViolating, kSortedPosition };

struct WarpConfig {
  Compatibility compat = Compatibility::kDot;
  RankPenalty penalty;
  double l2_lambda = 0.0;
  RankMode rank_mode = RankMode::kMarginViolating;
};

struct InstanceLoss {
  std::string instance_id;
  size_t rank = 0;
  double weighted_loss = 0.0;  // (beta(r)/r) * sum_y max{0, l}
};

struct LossReport {
  double objective = 0.0;   // data_term + l2_penalty
  double data_term = 0.0;   // mean of per_instance weighted losses
  double l2_penalty = 0.0;  // lambda * sum of squared Frobenius norms
  std::vector<InstanceLoss> per_instance;
};

double RankingErrorBeta(size_t r, const RankPenalty& penalty = {});

// Delta(y_n, y) + score_y - score_yn, Delta = 0 for the same class and 1
// otherwise. Not clamped; the objective applies max{0, .}.
double HingeLoss(double score_y, double score_yn, bool same_class);

// Count of classes y != true_class with a positive hinge term. Throws
// DataError if true_class is absent.
size_t MarginRank(const std::map<std::string, double>& scores,
                  const std::string& true_class);

// Mean over instances of (beta(r)/r) sum_{y in classes} max{0, l(x, y_n, y)}
// with exact ranks by full enumeration, plus lambda * sum ||M||_F^2.
// Throws DataError on dimension mismatches or labels missing from classes,
// NumericError for cosine at a zero-norm projection.
LossReport WarpObjective(const LabeledDataset& dataset,
                         const ClassTable& classes,
                         const ProjectionModel& model,
                         const WarpConfig& config);

// (Sub)gradient of WarpObjective with respect to every parameter matrix,
// returned as a model of the same shape. beta(r)/r is held constant; a hinge
// term contributes only when l > 0.
ProjectionModel WarpGradient(const LabeledDataset& dataset,
                             const ClassTable& classes,
                             const ProjectionModel& model,
                             const WarpConfig& config);

// Same, restricted to dataset rows `positions` and normalized by their count.
// Returns the mean weighted loss of those rows through data_term if given.
ProjectionModel WarpGradient(const LabeledDataset& dataset,
                             std::span<const size_t> positions,
                             const ClassTable& classes,
                             const ProjectionModel& model,
                             const WarpConfig& config,
                             double* data_term = nullptr);

}  // namespace zsl

#endif  // ZSL_WARP_LOSS_H_
