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

#ifndef ZSL_SYNTHETIC_H_
#define ZSL_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "zsl/embedding.h"
#include "zsl/projection.h"

namespace zsl {

enum class GroundTruthMap { kLinear, kTanhMlp };

std::string ToString(GroundTruthMap map);
GroundTruthMap ParseGroundTruthMap(const std::string& s);

// Desk-scale stand-in for a real acoustic/semantic corpus.
//
// Class embeddings phi are standard normal draws scaled to unit length.
// A (d_a x d_s) has orthonormal columns, so A^T A = I. For class y an
// acoustic embedding is
//
//   theta = A (z_y + noise * e) + nuisance * (I - A A^T) g,   g ~ N(0, I)
//
// where e is standard normal (noise_dof = 0) or Student-t with noise_dof
// degrees of freedom, per coordinate. z_y = phi_y for the linear map, so
// W = A gives W^T theta = phi_y + noise * e. For the tanh map
// z_y = atanh(gamma B phi_y), with B a random orthogonal d_s x d_s matrix and
// gamma putting the largest |entry| of gamma B phi over all classes at
// `saturation`; the FC2-tanh model U = A, V = B / gamma maps the noise-free
// code back to phi_y. The nuisance term lies in the null space of A^T and
// never changes the mapped point.
struct SyntheticSpec {
  size_t acoustic_dim = 16;
  size_t semantic_dim = 12;
  size_t seen_classes = 8;
  size_t unseen_classes = 8;
  size_t samples_per_class = 30;  // per class in the train and test splits
  size_t val_samples_per_class = 10;
  double noise = 0.0;
  unsigned noise_dof = 0;  // 0 = Gaussian noise
  double nuisance = 1.0;
  double saturation = 0.95;
  GroundTruthMap map = GroundTruthMap::kLinear;
  uint64_t seed = 0;

  // Throws ConfigError on zero counts, negative noise, noise_dof > 1000,
  // d_a < d_s, or a saturation outside (0, 1).
  void Validate() const;
};

struct SyntheticTask {
  LabeledDataset train;  // seen classes
  LabeledDataset val;    // held-out instances of seen classes
  LabeledDataset test;   // unseen classes
  ClassTable classes;    // seen and unseen together
  std::vector<std::string> seen_ids;
  std::vector<std::string> unseen_ids;
  FoldAssignment folds;  // fold 0 = seen, fold 1 = unseen
  ProjectionModel ground_truth;

  ClassTable SeenClasses() const { return classes.Subset(seen_ids); }
  ClassTable UnseenClasses() const { return classes.Subset(unseen_ids); }
};

SyntheticTask GenerateSyntheticTask(const SyntheticSpec& spec);

}  // namespace zsl

#endif  // ZSL_SYNTHETIC_H_
