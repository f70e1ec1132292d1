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

#include "zsl/warp_loss.h"

#include <numeric>

#include "zsl/error.h"

namespace zsl {

RankPenalty::RankPenalty(std::vector<double> alphas)
    : alphas_(std::move(alphas)), harmonic_(false) {
  for (size_t i = 0; i < alphas_.size(); ++i) {
    if (!(alphas_[i] >= 0.0)) {
      throw ConfigError("rank penalty alpha_" + std::to_string(i + 1) +
                        " is negative");
    }
    if (i > 0 && alphas_[i] > alphas_[i - 1]) {
      throw ConfigError("rank penalty alphas must be non-increasing");
    }
  }
}

double RankPenalty::Alpha(size_t i) const {
  if (i == 0) return 0.0;
  if (harmonic_) return 1.0 / static_cast<double>(i);
  return i <= alphas_.size() ? alphas_[i - 1] : 0.0;
}

double RankPenalty::Beta(size_t r) const {
  double sum = 0.0;
  for (size_t i = 1; i <= r; ++i) sum += Alpha(i);
  return sum;
}

double RankPenalty::Weight(size_t r) const {
  if (r == 0) return 0.0;
  return Beta(r) / static_cast<double>(r);
}

double RankingErrorBeta(size_t r, const RankPenalty& penalty) {
  return penalty.Beta(r);
}

double HingeLoss(double score_y, double score_yn, bool same_class) {
  return (same_class ? 0.0 : 1.0) + score_y - score_yn;
}

size_t MarginRank(const std::map<std::string, double>& scores,
                  const std::string& true_class) {
  auto it = scores.find(true_class);
  if (it == scores.end()) {
    throw DataError("true class '" + true_class + "' has no score");
  }
  size_t rank = 0;
  for (const auto& [id, s] : scores) {
    if (id != true_class && HingeLoss(s, it->second, false) > 0.0) ++rank;
  }
  return rank;
}

namespace {

void CheckInputs(const LabeledDataset& dataset, const ClassTable& classes,
                 const ProjectionModel& model) {
  if (dataset.acoustic_dim() != model.acoustic_dim()) {
    throw DataError("dataset acoustic dimension " +
                    std::to_string(dataset.acoustic_dim()) +
                    " does not match model input " +
                    std::to_string(model.acoustic_dim()));
  }
  if (classes.semantic_dim() != model.semantic_dim()) {
    throw DataError("class semantic dimension " +
                    std::to_string(classes.semantic_dim()) +
                    " does not match model output " +
                    std::to_string(model.semantic_dim()));
  }
  if (classes.empty()) throw DataError("empty class table");
}

// Scores, hinge terms and rank of one instance against every class.
struct InstanceEval {
  ForwardTrace trace;
  std::vector<double> scores;
  std::vector<double> hinge;  // l(x, y_n, y) for every class, unclamped
  size_t true_index = 0;
  size_t rank = 0;
  double weight = 0.0;
  double weighted_loss = 0.0;
};

void Evaluate(const LabeledInstance& item, const ClassTable& classes,
              const ProjectionModel& model, const WarpConfig& config,
              InstanceEval& eval) {
  auto found = classes.Find(item.class_id);
  if (!found) {
    throw DataError("instance '" + item.instance_id + "' has class '" +
                    item.class_id + "' missing from the class table");
  }
  eval.true_index = *found;
  Forward(model, item.acoustic.values(), eval.trace);
  const size_t n = classes.size();
  eval.scores.resize(n);
  for (size_t c = 0; c < n; ++c) {
    eval.scores[c] = CompatibilityScore(config.compat, eval.trace.output,
                                        classes.vector(c).values());
  }
  const double true_score = eval.scores[eval.true_index];
  eval.hinge.resize(n);
  size_t violating = 0, above = 0;
  double clamped_sum = 0.0;
  for (size_t c = 0; c < n; ++c) {
    const bool same = c == eval.true_index;
    eval.hinge[c] = HingeLoss(eval.scores[c], true_score, same);
    if (eval.hinge[c] > 0.0) clamped_sum += eval.hinge[c];
    if (!same) {
      if (eval.hinge[c] > 0.0) ++violating;
      if (eval.scores[c] > true_score) ++above;
    }
  }
  eval.rank =
      config.rank_mode == RankMode::kMarginViolating ? violating : above;
  eval.weight = config.penalty.Weight(eval.rank);
  eval.weighted_loss = eval.weight * clamped_sum;
}

}  // namespace

LossReport WarpObjective(const LabeledDataset& dataset,
                         const ClassTable& classes,
                         const ProjectionModel& model,
                         const WarpConfig& config) {
  CheckInputs(dataset, classes, model);
  if (dataset.empty()) throw DataError("empty dataset");
  LossReport report;
  report.per_instance.reserve(dataset.size());
  InstanceEval eval;
  double sum = 0.0;
  for (const auto& item : dataset.items()) {
    Evaluate(item, classes, model, config, eval);
    report.per_instance.push_back(
        {item.instance_id, eval.rank, eval.weighted_loss});
    sum += eval.weighted_loss;
  }
  report.data_term = sum / static_cast<double>(dataset.size());
  report.l2_penalty = config.l2_lambda * model.SquaredNorm();
  report.objective = report.data_term + report.l2_penalty;
  return report;
}

ProjectionModel WarpGradient(const LabeledDataset& dataset,
                             const ClassTable& classes,
                             const ProjectionModel& model,
                             const WarpConfig& config) {
  std::vector<size_t> all(dataset.size());
  std::iota(all.begin(), all.end(), size_t{0});
  return WarpGradient(dataset, all, classes, model, config);
}

ProjectionModel WarpGradient(const LabeledDataset& dataset,
                             std::span<const size_t> positions,
                             const ClassTable& classes,
                             const ProjectionModel& model,
                             const WarpConfig& config, double* data_term) {
  CheckInputs(dataset, classes, model);
  if (positions.empty()) throw DataError("empty dataset");
  ProjectionModel grad = model.ZerosLike();
  const double inv_n = 1.0 / static_cast<double>(positions.size());
  InstanceEval eval;
  std::vector<double> grad_output(model.semantic_dim());
  double sum = 0.0;
  for (size_t p : positions) {
    const auto& item = dataset[p];
    Evaluate(item, classes, model, config, eval);
    sum += eval.weighted_loss;
    if (eval.weight == 0.0) continue;
    // dL/dT = weight * sum_{y: l > 0} (dF_y/dT - dF_yn/dT)
    std::fill(grad_output.begin(), grad_output.end(), 0.0);
    size_t active = 0;
    for (size_t c = 0; c < classes.size(); ++c) {
      if (c == eval.true_index || !(eval.hinge[c] > 0.0)) continue;
      AccumulateCompatibilityGradient(config.compat, eval.trace.output,
                                      classes.vector(c).values(), 1.0,
                                      grad_output);
      ++active;
    }
    if (active == 0) continue;
    AccumulateCompatibilityGradient(
        config.compat, eval.trace.output,
        classes.vector(eval.true_index).values(),
        -static_cast<double>(active), grad_output);
    Backward(model, item.acoustic.values(), eval.trace, grad_output,
             eval.weight * inv_n, grad);
  }
  if (data_term) *data_term = sum * inv_n;
  if (config.l2_lambda != 0.0) {
    auto g = grad.mutable_matrices();
    auto m = model.matrices();
    for (size_t k = 0; k < g.size(); ++k) {
      g[k]->Axpy(2.0 * config.l2_lambda, *m[k]);
    }
  }
  return grad;
}

}  // namespace zsl
