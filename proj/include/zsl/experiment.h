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

#ifndef ZSL_EXPERIMENT_H_
#define ZSL_EXPERIMENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "zsl/embedding.h"
#include "zsl/stats.h"
#include "zsl/synthetic.h"
#include "zsl/trainer.h"

namespace zsl {

// Train / validation / test partitions with the candidate classes each is
// classified against. Validation and test classes are the zero-shot
// candidates of their split; training never consults them.
struct DataSplits {
  LabeledDataset train, val, test;
  ClassTable train_classes, val_classes, test_classes;
};

DataSplits SplitsFromSynthetic(const SyntheticTask& task);

struct SeedRun {
  uint64_t seed = 0;
  double test_top1 = 0.0;
  size_t best_epoch = 0;
};

struct ExperimentResult {
  std::vector<SeedRun> runs;
  RunStatistics stats;
};

// Trains n_seeds models with seeds base_seed, ..., base_seed + n_seeds - 1
// (config.seed is overridden) and scores each run's best-validation model on
// the test split against the test classes only. Seeds may run concurrently;
// results are gathered by seed index. Errors are rethrown with the seed in
// the message.
ExperimentResult RunExperiment(const std::string& method,
                               const TrainConfig& config,
                               const DataSplits& splits, size_t n_seeds,
                               uint64_t base_seed);

struct MethodConfig {
  std::string name;
  TrainConfig config;
};

struct TTestRow {
  std::string method_a;
  std::string method_b;  // the comparison anchor
  TTestResult result;
};

struct MethodFailure {
  std::string method;
  std::string message;
  int exit_code = 0;
};

struct BenchResult {
  std::vector<std::pair<std::string, ExperimentResult>> methods;  // config order
  std::vector<TTestRow> ttests;
  std::vector<MethodFailure> failures;
};

inline const char* const kComparisonAnchors[] = {"bilinear", "factored"};

// Runs every method on the shared seed ladder, then t-tests each method
// against each anchor present (bilinear, then factored), one row per
// unordered pair. A failing method is recorded and the suite continues.
BenchResult RunBench(const std::vector<MethodConfig>& methods,
                     const DataSplits& splits, size_t n_seeds,
                     uint64_t base_seed);

// Line formats (tab separated, no header):
//   results  method seed top1
//   summary  method mean std n        (rows by mean descending)
//   t-tests  method_a method_b t df p significant
//   metrics  epoch train_objective val_top1
std::string FormatResults(const BenchResult& bench);
std::string FormatSummary(const BenchResult& bench);
std::string FormatTTests(const BenchResult& bench);
std::string FormatMetrics(const TrainResult& result);

}  // namespace zsl

#endif  // ZSL_EXPERIMENT_H_
