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

#include "zsl/trainer.h"

#include <cmath>
#include <exception>
#include <numeric>

#include "zsl/evaluation.h"
#include "zsl/rng.h"

namespace zsl {

void TrainConfig::Validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning rate must be a finite value >= 0");
  }
  if (batch_size == 0) throw ConfigError("batch size must be >= 1");
  if (!(l2_lambda >= 0.0) || !std::isfinite(l2_lambda)) {
    throw ConfigError("l2 lambda must be a finite value >= 0");
  }
}

WarpConfig TrainConfig::Warp() const {
  WarpConfig warp;
  warp.compat = compat;
  warp.l2_lambda = l2_lambda;
  warp.rank_mode = rank_mode;
  return warp;
}

TrainResult Train(const LabeledDataset& train_set,
                  const ClassTable& train_classes,
                  const LabeledDataset& val_set, const ClassTable& val_classes,
                  const TrainConfig& config) {
  config.Validate();
  if (train_set.empty()) throw DataError("empty training set");
  if (val_set.empty()) throw DataError("empty validation set");
  if (train_set.acoustic_dim() != val_set.acoustic_dim()) {
    throw DataError("training and validation acoustic dimensions differ");
  }
  if (train_classes.semantic_dim() != val_classes.semantic_dim()) {
    throw DataError("training and validation semantic dimensions differ");
  }

  const WarpConfig warp = config.Warp();
  ProjectionModel model =
      InitModel(config.model, train_set.acoustic_dim(),
                train_classes.semantic_dim(), config.seed);

  auto record = [&](size_t epoch) {
    EpochMetrics m;
    m.epoch = epoch;
    try {
      m.train_objective =
          WarpObjective(train_set, train_classes, model, warp).objective;
      if (!std::isfinite(m.train_objective)) {
        throw NumericError("training objective is not finite");
      }
      m.val_top1 = Top1Accuracy(model, config.compat, val_set, val_classes);
    } catch (const NumericError& e) {
      throw DivergenceError(epoch, e.what());
    }
    return m;
  };

  TrainResult result{model, model, 0, 0.0, {}, config.seed};
  result.per_epoch.push_back(record(0));
  result.best_val_top1 = result.per_epoch.back().val_top1;

  Rng shuffle_rng(DeriveSeed(config.seed, 1));
  std::vector<size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), size_t{0});

  for (size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    if (config.shuffle) shuffle_rng.Shuffle(std::span<size_t>(order));
    for (size_t start = 0; start < order.size(); start += config.batch_size) {
      const size_t end = std::min(order.size(), start + config.batch_size);
      std::span<const size_t> batch(order.data() + start, end - start);
      ProjectionModel grad =
          WarpGradient(train_set, batch, train_classes, model, warp);
      if (!grad.AllFinite()) {
        throw DivergenceError(epoch, "gradient is not finite");
      }
      auto params = model.mutable_matrices();
      auto grads = grad.matrices();
      for (size_t k = 0; k < params.size(); ++k) {
        params[k]->Axpy(-config.learning_rate, *grads[k]);
      }
    }
    if (!model.AllFinite()) {
      throw DivergenceError(epoch, "parameters are not finite");
    }
    result.per_epoch.push_back(record(epoch));
    if (result.per_epoch.back().val_top1 >= result.best_val_top1) {
      result.best_val_top1 = result.per_epoch.back().val_top1;
      result.best_epoch = epoch;
      result.best_model = model;
    }
  }
  result.final_model = std::move(model);
  return result;
}

GridSearchResult GridSearch(std::span<const TrainConfig> configs,
                            const LabeledDataset& train_set,
                            const ClassTable& train_classes,
                            const LabeledDataset& val_set,
                            const ClassTable& val_classes) {
  if (configs.empty()) throw ConfigError("grid search needs at least one config");
  std::optional<GridSearchResult> best;
  std::vector<GridEntry> entries;
  std::exception_ptr last_error;
  for (size_t i = 0; i < configs.size(); ++i) {
    GridEntry entry{configs[i], std::nullopt, ""};
    try {
      TrainResult r =
          Train(train_set, train_classes, val_set, val_classes, configs[i]);
      entry.val_top1 = r.best_val_top1;
      if (!best || r.best_val_top1 > best->best_result.best_val_top1) {
        best = GridSearchResult{i, configs[i], std::move(r), {}};
      }
    } catch (const std::exception& e) {
      entry.error = e.what();
      last_error = std::current_exception();
    }
    entries.push_back(std::move(entry));
  }
  if (!best) std::rethrow_exception(last_error);
  best->entries = std::move(entries);
  return std::move(*best);
}

}  // namespace zsl
