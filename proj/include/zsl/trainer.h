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

#ifndef ZSL_TRAINER_H_
#define ZSL_TRAINER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zsl/embedding.h"
#include "zsl/error.h"
#include "zsl/projection.h"
#include "zsl/warp_loss.h"

namespace zsl {

// Defaults are our own choices; nothing here is a published setting.
struct TrainConfig {
  ModelSpec model;
  Compatibility compat = Compatibility::kDot;
  RankMode rank_mode = RankMode::kMarginViolating;
  double learning_rate = 0.01;  // >= 0; 0 freezes the initial model
  size_t epochs = 100;
  size_t batch_size = 32;
  double l2_lambda = 0.0;
  uint64_t seed = 0;
  bool shuffle = true;

  // Throws ConfigError on negative rates or lambda, or a zero batch size.
  void Validate() const;
  WarpConfig Warp() const;
};

struct EpochMetrics {
  size_t epoch = 0;  // 0 is the initial model
  double train_objective = 0.0;
  double val_top1 = 0.0;
};

struct TrainResult {
  ProjectionModel final_model;
  ProjectionModel best_model;  // highest validation TOP-1, latest epoch on ties
  size_t best_epoch = 0;
  double best_val_top1 = 0.0;
  std::vector<EpochMetrics> per_epoch;
  uint64_t seed = 0;
};

class DivergenceError : public NumericError {
 public:
  DivergenceError(size_t epoch, const std::string& what)
      : NumericError("diverged at epoch " + std::to_string(epoch) + ": " + what),
        epoch_(epoch) {}
  size_t epoch() const { return epoch_; }

 private:
  size_t epoch_;
};

// Mini-batch SGD on the WARP objective. Each epoch visits the training set
// once (shuffled with a stream derived from config.seed when enabled) in
// batches of batch_size; each batch applies M <- M - lr * grad to every
// parameter matrix, with the data term normalized by the batch size. After
// each epoch the full training objective and the validation TOP-1 (val_set
// classified against val_classes only) are recorded. Entry 0 of per_epoch
// describes the initial model.
TrainResult Train(const LabeledDataset& train_set,
                  const ClassTable& train_classes,
                  const LabeledDataset& val_set, const ClassTable& val_classes,
                  const TrainConfig& config);

struct GridEntry {
  TrainConfig config;
  std::optional<double> val_top1;  // empty if training failed
  std::string error;
};

struct GridSearchResult {
  size_t best_index = 0;
  TrainConfig best_config;
  TrainResult best_result;
  std::vector<GridEntry> entries;
};

// Trains every config and keeps the one with the highest validation TOP-1,
// earliest in the list on ties. Failed configs are recorded and skipped;
// throws the last failure if none succeeds.
GridSearchResult GridSearch(std::span<const TrainConfig> configs,
                            const LabeledDataset& train_set,
                            const ClassTable& train_classes,
                            const LabeledDataset& val_set,
                            const ClassTable& val_classes);

}  // namespace zsl

#endif  // ZSL_TRAINER_H_
