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

#include "zsl/config.h"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "zsl/embedding_io.h"
#include "zsl/error.h"

namespace zsl {
namespace {

std::string Trim(const std::string& s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

template <typename T>
T ParseNumber(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("invalid value '" + value + "' for " + key);
  }
  return out;
}

bool ParseBool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("invalid boolean '" + value + "' for " + key);
}

std::vector<std::string> SplitList(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(value);
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

RankMode ParseRankMode(const std::string& s) {
  if (s == "margin") return RankMode::kMarginViolating;
  if (s == "position") return RankMode::kSortedPosition;
  throw ConfigError("unknown rank mode '" + s + "' (margin|position)");
}

// Applies one train/model setting shared by top-level keys and per-method
// overrides. Returns false for keys it does not know.
bool ApplyTrainKey(TrainConfig& c, const std::string& key,
                   const std::string& full_key, const std::string& value) {
  if (key == "lr") {
    c.learning_rate = ParseNumber<double>(full_key, value);
  } else if (key == "epochs") {
    c.epochs = ParseNumber<size_t>(full_key, value);
  } else if (key == "batch_size") {
    c.batch_size = ParseNumber<size_t>(full_key, value);
  } else if (key == "l2") {
    c.l2_lambda = ParseNumber<double>(full_key, value);
  } else if (key == "rank") {
    c.model.rank = ParseNumber<size_t>(full_key, value);
  } else if (key == "compat") {
    c.compat = ParseCompatibility(value);
  } else if (key == "rank_mode") {
    c.rank_mode = ParseRankMode(value);
  } else {
    return false;
  }
  return true;
}

const std::set<std::string> kSynthKeys = {
    "acoustic_dim", "semantic_dim", "seen_classes", "unseen_classes",
    "samples_per_class", "val_samples_per_class", "noise", "noise_dof",
    "nuisance", "saturation", "map", "seed"};

}  // namespace

KeyValueConfig KeyValueConfig::Parse(std::istream& in,
                                     const std::string& source) {
  KeyValueConfig config;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(number) + ": ";
    if (eq == std::string::npos) {
      throw ConfigError(where + "expected 'key = value'");
    }
    std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "empty key");
    if (config.Has(key)) throw ConfigError(where + "repeated key '" + key + "'");
    config.Set(key, value);
  }
  return config;
}

KeyValueConfig KeyValueConfig::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  return Parse(in, path.string());
}

void KeyValueConfig::Set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

std::optional<std::string> KeyValueConfig::Get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

TrainConfig ExperimentConfig::ConfigFor(const std::string& method_name) const {
  TrainConfig c = train;
  const size_t rank = c.model.rank;
  c.model = ParseMethod(method_name);
  c.model.rank = rank;
  auto it = method_overrides.find(method_name);
  if (it != method_overrides.end()) {
    for (const auto& [key, value] : it->second) {
      const std::string full = "method." + method_name + "." + key;
      if (!ApplyTrainKey(c, key, full, value)) {
        throw ConfigError("unknown key '" + full + "'");
      }
    }
  }
  c.Validate();
  return c;
}

ExperimentConfig BuildExperimentConfig(const KeyValueConfig& kv,
                                       const std::filesystem::path& base_dir) {
  ExperimentConfig config;
  SyntheticSpec synth;
  FileDataConfig files;
  bool any_synth = false, any_data = false;
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  for (const auto& [key, value] : kv.values()) {
    auto dot = key.find('.');
    const std::string section = dot == std::string::npos ? "" : key.substr(0, dot);
    const std::string name = dot == std::string::npos ? key : key.substr(dot + 1);

    if (section == "synth" && kSynthKeys.count(name)) {
      any_synth = true;
      if (name == "acoustic_dim") synth.acoustic_dim = ParseNumber<size_t>(key, value);
      else if (name == "semantic_dim") synth.semantic_dim = ParseNumber<size_t>(key, value);
      else if (name == "seen_classes") synth.seen_classes = ParseNumber<size_t>(key, value);
      else if (name == "unseen_classes") synth.unseen_classes = ParseNumber<size_t>(key, value);
      else if (name == "samples_per_class") synth.samples_per_class = ParseNumber<size_t>(key, value);
      else if (name == "val_samples_per_class") synth.val_samples_per_class = ParseNumber<size_t>(key, value);
      else if (name == "noise") synth.noise = ParseNumber<double>(key, value);
      else if (name == "noise_dof") synth.noise_dof = ParseNumber<unsigned>(key, value);
      else if (name == "nuisance") synth.nuisance = ParseNumber<double>(key, value);
      else if (name == "saturation") synth.saturation = ParseNumber<double>(key, value);
      else if (name == "map") synth.map = ParseGroundTruthMap(value);
      else if (name == "seed") synth.seed = ParseNumber<uint64_t>(key, value);
    } else if (section == "data") {
      any_data = true;
      if (name == "acoustic") files.acoustic = resolve(value);
      else if (name == "classes") files.classes = resolve(value);
      else if (name == "train") files.train = resolve(value);
      else if (name == "val") files.val = resolve(value);
      else if (name == "test") files.test = resolve(value);
      else if (name == "folds") files.folds = resolve(value);
      else if (name == "train_fold") files.train_fold = ParseNumber<int>(key, value);
      else if (name == "val_fold") files.val_fold = ParseNumber<int>(key, value);
      else if (name == "test_fold") files.test_fold = ParseNumber<int>(key, value);
      else throw ConfigError("unknown key '" + key + "'");
    } else if (key == "model.method") {
      ParseMethod(value);
      config.method = value;
    } else if (section == "model" &&
               (name == "rank" || name == "compat" || name == "rank_mode")) {
      ApplyTrainKey(config.train, name, key, value);
    } else if (section == "train") {
      if (name == "seed") {
        config.train.seed = ParseNumber<uint64_t>(key, value);
      } else if (name == "shuffle") {
        config.train.shuffle = ParseBool(key, value);
      } else if (name == "rank" || name == "compat" || name == "rank_mode" ||
                 !ApplyTrainKey(config.train, name, key, value)) {
        throw ConfigError("unknown key '" + key + "'");
      }
    } else if (key == "bench.methods") {
      config.bench_methods = SplitList(value);
      for (const auto& m : config.bench_methods) ParseMethod(m);
    } else if (key == "bench.seeds") {
      config.n_seeds = ParseNumber<size_t>(key, value);
    } else if (key == "bench.base_seed") {
      config.base_seed = ParseNumber<uint64_t>(key, value);
    } else if (key == "output.dir") {
      config.output_dir = resolve(value);
    } else if (section == "method") {
      auto dot2 = name.rfind('.');
      if (dot2 == std::string::npos) throw ConfigError("unknown key '" + key + "'");
      const std::string method = name.substr(0, dot2);
      ParseMethod(method);
      config.method_overrides[method][name.substr(dot2 + 1)] = value;
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }

  if (any_synth == any_data) {
    throw ConfigError(
        "config must describe exactly one data source (synth.* or data.*)");
  }
  if (any_synth) {
    synth.Validate();
    config.synthetic = synth;
  } else {
    for (const auto* k : {"data.acoustic", "data.classes", "data.train",
                          "data.val", "data.test"}) {
      if (!kv.Has(k)) throw ConfigError("missing required key '" + std::string(k) + "'");
    }
    if (files.folds &&
        (files.train_fold < 0 || files.val_fold < 0 || files.test_fold < 0)) {
      throw ConfigError(
          "data.folds requires data.train_fold, data.val_fold and data.test_fold");
    }
    config.files = files;
  }
  if (config.n_seeds == 0) throw ConfigError("bench.seeds must be >= 1");
  config.train.Validate();
  for (const auto& [method, _] : config.method_overrides) config.ConfigFor(method);
  return config;
}

void CheckDataPaths(const ExperimentConfig& config) {
  if (!config.files) return;
  const auto& f = *config.files;
  std::vector<std::filesystem::path> paths = {f.acoustic, f.classes, f.train,
                                              f.val, f.test};
  if (f.folds) paths.push_back(*f.folds);
  for (const auto& p : paths) {
    if (!std::filesystem::is_regular_file(p)) {
      throw DataError("data file not found: '" + p.string() + "'");
    }
  }
}

DataSplits LoadSplits(const ExperimentConfig& config) {
  if (config.synthetic) {
    return SplitsFromSynthetic(GenerateSyntheticTask(*config.synthetic));
  }
  CheckDataPaths(config);
  const auto& f = *config.files;
  const EmbeddingTable acoustic = ParseEmbeddingFile(f.acoustic);
  const ClassTable all_classes = ToClassTable(ParseEmbeddingFile(f.classes));
  std::optional<FoldAssignment> folds;
  if (f.folds) folds = ParseFoldFile(*f.folds);

  auto load = [&](const std::filesystem::path& manifest, int fold,
                  const char* split) {
    LabeledDataset data = BuildDataset(acoustic, ParseManifestFile(manifest));
    std::vector<std::string> ids =
        folds ? folds->ClassesInFold(fold) : data.ClassIds();
    if (ids.empty()) {
      throw DataError(std::string(split) + " split has no candidate classes");
    }
    ClassTable candidates = all_classes.Subset(ids);
    for (const auto& item : data.items()) {
      if (!candidates.Contains(item.class_id)) {
        throw DataError(std::string(split) + " instance '" + item.instance_id +
                        "' has class '" + item.class_id +
                        "' outside its candidate classes");
      }
    }
    return std::make_pair(std::move(data), std::move(candidates));
  };
  auto [train, train_classes] = load(f.train, f.train_fold, "train");
  auto [val, val_classes] = load(f.val, f.val_fold, "validation");
  auto [test, test_classes] = load(f.test, f.test_fold, "test");
  return DataSplits{std::move(train),         std::move(val),
                    std::move(test),          std::move(train_classes),
                    std::move(val_classes),   std::move(test_classes)};
}

}  // namespace zsl
