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

#ifndef ZSL_EVALUATION_H_
#define ZSL_EVALUATION_H_

#include <string>
#include <vector>

#include "zsl/embedding.h"
#include "zsl/projection.h"

namespace zsl {

// argmax over candidates of F(T(theta), phi(z)); ties go to the
// lexicographically smallest class id. Throws DataError for an empty
// candidate table or mismatched dimensions.
std::string Classify(const ProjectionModel& model, Compatibility compat,
                     const EmbeddingVector& acoustic,
                     const ClassTable& candidates);

struct Prediction {
  std::string instance_id;
  std::string predicted;
  std::string truth;
};

// Classifies every instance of dataset against candidates.
std::vector<Prediction> PredictAll(const ProjectionModel& model,
                                   Compatibility compat,
                                   const LabeledDataset& dataset,
                                   const ClassTable& candidates);

// Fraction of instances whose prediction equals the label. Every label must
// be a candidate (DataError otherwise).
double Top1Accuracy(const ProjectionModel& model, Compatibility compat,
                    const LabeledDataset& test_set,
                    const ClassTable& candidates);

}  // namespace zsl

#endif  // ZSL_EVALUATION_H_
