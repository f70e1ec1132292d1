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

#ifndef ZSL_CONFIG_H_
#define ZSL_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zsl/experiment.h"
#include "zsl/synthetic.h"
#include "zsl/trainer.h"

namespace zsl {

// Flat "key = value" text, one pair per line, '#' comments, dotted keys for
// sections. Repeated keys are a ConfigError.
class KeyValueConfig {
 public:
  static KeyValueConfig Parse(std::istream& in, const std::string& source);
  static KeyValueConfig Load(const std::filesystem::path& path);

  void Set(const std::string& key, const std::string& value);
  bool Has(const std::string& key) const { return values_.count(key) > 0; }
  std::optional<std::string> Get(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

struct FileDataConfig {
  std::filesystem::path acoustic;  // embedding table of instances
  std::filesystem::path classes;   // embedding table of classes
  std::filesystem::path train, val, test;  // manifests
  std::optional<std::filesystem::path> folds;
  // With a fold file, each split's candidates are the classes of its fold;
  // without one, the labels present in the split's manifest.
  int train_fold = -1, val_fold = -1, test_fold = -1;
};

struct ExperimentConfig {
  std::optional<SyntheticSpec> synthetic;
  std::optional<FileDataConfig> files;
  std::string method = "bilinear";
  TrainConfig train;
  std::vector<std::string> bench_methods;
  // Per-method overrides for bench: method.<name>.<key> = value.
  std::map<std::string, std::map<std::string, std::string>> method_overrides;
  size_t n_seeds = 20;
  uint64_t base_seed = 0;
  std::filesystem::path output_dir = "out";

  // The training config for one method name (model.* / train.* values plus
  // that method's overrides).
  TrainConfig ConfigFor(const std::string& method_name) const;
};

// Recognized keys (all optional unless noted):
//   synth.{acoustic_dim, semantic_dim, seen_classes, unseen_classes,
//          samples_per_class, val_samples_per_class, noise, noise_dof,
//          nuisance, saturation, map, seed}
//   data.{acoustic, classes, train, val, test, folds,
//         train_fold, val_fold, test_fold}
//   model.{method, rank, compat, rank_mode}
//   train.{lr, epochs, batch_size, l2, seed, shuffle}
//   bench.{methods, seeds, base_seed}
//   method.<name>.{lr, epochs, batch_size, l2, rank, compat, rank_mode}
//   output.dir
// Exactly one of synth.* and data.* must be present. Relative data paths
// resolve against base_dir. Throws ConfigError on unknown keys or bad values.
ExperimentConfig BuildExperimentConfig(const KeyValueConfig& kv,
                                       const std::filesystem::path& base_dir);

// Checks that every referenced data file exists (DataError naming the path).
void CheckDataPaths(const ExperimentConfig& config);

// Loads or generates the train / validation / test splits.
DataSplits LoadSplits(const ExperimentConfig& config);

}  // namespace zsl

#endif  // ZSL_CONFIG_H_
