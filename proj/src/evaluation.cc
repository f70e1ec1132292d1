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

#include "zsl/evaluation.h"

#include <cmath>

#include "zsl/error.h"

namespace zsl {
namespace {

size_t ArgmaxIndex(const ProjectionModel& model, Compatibility compat,
                   std::span<const double> acoustic,
                   const ClassTable& candidates, ForwardTrace& trace) {
  Forward(model, acoustic, trace);
  size_t best = 0;
  double best_score = 0.0;
  for (size_t c = 0; c < candidates.size(); ++c) {
    const double s = CompatibilityScore(compat, trace.output,
                                        candidates.vector(c).values());
    if (!std::isfinite(s)) throw NumericError("non-finite compatibility score");
    if (c == 0 || s > best_score) {
      best = c;
      best_score = s;
    }
  }
  return best;
}

void CheckDims(const ProjectionModel& model, size_t acoustic_dim,
               const ClassTable& candidates) {
  if (candidates.empty()) throw DataError("empty candidate class table");
  if (acoustic_dim != model.acoustic_dim()) {
    throw DataError("acoustic dimension " + std::to_string(acoustic_dim) +
                    " does not match model input " +
                    std::to_string(model.acoustic_dim()));
  }
  if (candidates.semantic_dim() != model.semantic_dim()) {
    throw DataError("candidate semantic dimension " +
                    std::to_string(candidates.semantic_dim()) +
                    " does not match model output " +
                    std::to_string(model.semantic_dim()));
  }
}

}  // namespace

std::string Classify(const ProjectionModel& model, Compatibility compat,
                     const EmbeddingVector& acoustic,
                     const ClassTable& candidates) {
  CheckDims(model, acoustic.dim(), candidates);
  ForwardTrace trace;
  return candidates.id(
      ArgmaxIndex(model, compat, acoustic.values(), candidates, trace));
}

std::vector<Prediction> PredictAll(const ProjectionModel& model,
                                   Compatibility compat,
                                   const LabeledDataset& dataset,
                                   const ClassTable& candidates) {
  CheckDims(model, dataset.acoustic_dim(), candidates);
  std::vector<Prediction> out;
  out.reserve(dataset.size());
  ForwardTrace trace;
  for (const auto& item : dataset.items()) {
    const size_t best =
        ArgmaxIndex(model, compat, item.acoustic.values(), candidates, trace);
    out.push_back({item.instance_id, candidates.id(best), item.class_id});
  }
  return out;
}

double Top1Accuracy(const ProjectionModel& model, Compatibility compat,
                    const LabeledDataset& test_set,
                    const ClassTable& candidates) {
  if (test_set.empty()) throw DataError("empty test set");
  for (const auto& item : test_set.items()) {
    if (!candidates.Contains(item.class_id)) {
      throw DataError("test label '" + item.class_id +
                      "' is not among the candidate classes");
    }
  }
  size_t correct = 0;
  for (const auto& p : PredictAll(model, compat, test_set, candidates)) {
    if (p.predicted == p.truth) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test_set.size());
}

}  // namespace zsl
