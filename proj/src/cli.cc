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

#include "zsl/cli.h"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zsl/checkpoint.h"
#include "zsl/config.h"
#include "zsl/embedding_io.h"
#include "zsl/error.h"
#include "zsl/evaluation.h"
#include "zsl/experiment.h"

namespace zsl {
namespace {

namespace fs = std::filesystem;

struct CommonOptions {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::optional<std::string> out_dir;
  std::vector<std::string> methods;
};

struct SynthOptions {
  std::optional<size_t> acoustic_dim, semantic_dim, seen, unseen, samples,
      val_samples;
  std::optional<double> noise;
  std::optional<unsigned> noise_dof;
  std::optional<std::string> map;
};

KeyValueConfig ReadConfigFile(const CommonOptions& opts) {
  if (opts.config_path.empty()) return {};
  return KeyValueConfig::Load(opts.config_path);
}

fs::path BaseDir(const CommonOptions& opts) {
  if (opts.config_path.empty()) return fs::path(".");
  fs::path parent = fs::path(opts.config_path).parent_path();
  return parent.empty() ? fs::path(".") : parent;
}

ExperimentConfig Resolve(const KeyValueConfig& kv, const CommonOptions& opts) {
  ExperimentConfig config = BuildExperimentConfig(kv, BaseDir(opts));
  if (opts.out_dir) config.output_dir = *opts.out_dir;
  return config;
}

fs::path PrepareOutputDir(const ExperimentConfig& config) {
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) {
    throw DataError("cannot create output directory '" +
                    config.output_dir.string() + "': " + ec.message());
  }
  return config.output_dir;
}

void AddCommonOptions(CLI::App* cmd, CommonOptions& opts, bool config_required) {
  auto* c = cmd->add_option("--config", opts.config_path, "Experiment config file");
  if (config_required) c->required();
  cmd->add_option("--seed", opts.seed, "Seed override");
  cmd->add_option("--out", opts.out_dir, "Output directory override");
}

int CmdTrain(const CommonOptions& opts, std::ostream& out) {
  ExperimentConfig config = Resolve(ReadConfigFile(opts), opts);
  if (!opts.methods.empty()) config.method = opts.methods.front();
  TrainConfig train = config.ConfigFor(config.method);
  if (opts.seed) train.seed = *opts.seed;
  DataSplits splits = LoadSplits(config);
  TrainResult result = Train(splits.train, splits.train_classes, splits.val,
                             splits.val_classes, train);
  const fs::path dir = PrepareOutputDir(config);
  SaveCheckpoint(dir / "model.ckpt", result.best_model);
  SaveCheckpoint(dir / "final.ckpt", result.final_model);
  WriteTextFile(dir / "metrics.tsv", FormatMetrics(result));
  const double test_top1 = Top1Accuracy(result.best_model, train.compat,
                                        splits.test, splits.test_classes);
  out << "method\t" << config.method << '\n'
      << "best_epoch\t" << result.best_epoch << '\n'
      << "val_top1\t" << FormatReal(result.best_val_top1) << '\n'
      << "test_top1\t" << FormatReal(test_top1) << '\n';
  return kExitOk;
}

int CmdBench(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  ExperimentConfig config = Resolve(ReadConfigFile(opts), opts);
  if (opts.seed) config.base_seed = *opts.seed;
  std::vector<std::string> names = opts.methods;
  if (names.empty()) names = config.bench_methods;
  if (names.empty()) names = {config.method};
  std::vector<MethodConfig> methods;
  for (const auto& name : names) methods.push_back({name, config.ConfigFor(name)});

  DataSplits splits = LoadSplits(config);
  BenchResult bench = RunBench(methods, splits, config.n_seeds, config.base_seed);
  const fs::path dir = PrepareOutputDir(config);
  WriteTextFile(dir / "results.tsv", FormatResults(bench));
  WriteTextFile(dir / "summary.tsv", FormatSummary(bench));
  WriteTextFile(dir / "ttest.tsv", FormatTTests(bench));
  out << FormatSummary(bench);
  int code = kExitOk;
  for (const auto& f : bench.failures) {
    err << "method " << f.method << " failed: " << f.message << '\n';
    if (code == kExitOk) code = f.exit_code;
  }
  return code;
}

int CmdSynth(const CommonOptions& opts, const SynthOptions& synth,
             std::ostream& out) {
  KeyValueConfig kv = ReadConfigFile(opts);
  auto set = [&kv](const char* key, const auto& value) {
    if (value) {
      std::ostringstream ss;
      ss << *value;
      kv.Set(key, ss.str());
    }
  };
  set("synth.acoustic_dim", synth.acoustic_dim);
  set("synth.semantic_dim", synth.semantic_dim);
  set("synth.seen_classes", synth.seen);
  set("synth.unseen_classes", synth.unseen);
  set("synth.samples_per_class", synth.samples);
  set("synth.val_samples_per_class", synth.val_samples);
  if (synth.noise) kv.Set("synth.noise", FormatReal(*synth.noise));
  set("synth.noise_dof", synth.noise_dof);
  set("synth.map", synth.map);
  set("synth.seed", opts.seed);
  if (!kv.Has("synth.seed")) kv.Set("synth.seed", "0");

  ExperimentConfig config = Resolve(kv, opts);
  if (!config.synthetic) throw ConfigError("synth needs a synth.* specification");
  SyntheticTask task = GenerateSyntheticTask(*config.synthetic);
  const fs::path dir = PrepareOutputDir(config);

  EmbeddingTable acoustic;
  acoustic.dim = task.train.acoustic_dim();
  std::vector<ManifestEntry> train, val, test;
  for (auto [data, manifest] : {std::pair{&task.train, &train},
                                std::pair{&task.val, &val},
                                std::pair{&task.test, &test}}) {
    for (const auto& item : data->items()) {
      acoustic.rows.emplace_back(item.instance_id, item.acoustic);
      manifest->push_back({item.instance_id, item.class_id});
    }
  }
  auto render = [](auto&& write) {
    std::ostringstream ss;
    write(ss);
    return ss.str();
  };
  WriteTextFile(dir / "acoustic.emb",
                render([&](auto& s) { WriteEmbeddingTable(s, acoustic); }));
  WriteTextFile(dir / "classes.emb", render([&](auto& s) {
                  WriteEmbeddingTable(s, ToEmbeddingTable(task.classes));
                }));
  WriteTextFile(dir / "train.tsv", render([&](auto& s) { WriteManifest(s, train); }));
  WriteTextFile(dir / "val.tsv", render([&](auto& s) { WriteManifest(s, val); }));
  WriteTextFile(dir / "test.tsv", render([&](auto& s) { WriteManifest(s, test); }));
  WriteTextFile(dir / "folds.tsv",
                render([&](auto& s) { WriteFoldAssignment(s, task.folds); }));
  WriteTextFile(dir / "experiment.cfg",
                "# seen classes are fold 0, unseen classes fold 1\n"
                "data.acoustic = acoustic.emb\n"
                "data.classes = classes.emb\n"
                "data.train = train.tsv\n"
                "data.val = val.tsv\n"
                "data.test = test.tsv\n"
                "data.folds = folds.tsv\n"
                "data.train_fold = 0\n"
                "data.val_fold = 0\n"
                "data.test_fold = 1\n");
  out << "wrote " << task.train.size() + task.val.size() + task.test.size()
      << " instances and " << task.classes.size() << " classes to "
      << dir.string() << '\n';
  return kExitOk;
}

int CmdEval(const CommonOptions& opts, const std::string& checkpoint,
            std::ostream& out) {
  ExperimentConfig config = Resolve(ReadConfigFile(opts), opts);
  ProjectionModel model = LoadCheckpoint(checkpoint);
  DataSplits splits = LoadSplits(config);
  const TrainConfig train = config.ConfigFor(config.method);
  auto predictions = PredictAll(model, train.compat, splits.test, splits.test_classes);
  std::ostringstream ss;
  size_t correct = 0;
  for (const auto& p : predictions) {
    ss << p.instance_id << '\t' << p.predicted << '\t' << p.truth << '\n';
    if (p.predicted == p.truth) ++correct;
  }
  const fs::path dir = PrepareOutputDir(config);
  WriteTextFile(dir / "predictions.tsv", ss.str());
  const double top1 =
      static_cast<double>(correct) / static_cast<double>(predictions.size());
  out << "top1\t" << FormatReal(top1) << '\n';
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Zero-shot classification with acoustic-semantic projections"};
  app.require_subcommand(1);

  CommonOptions train_opts, bench_opts, synth_opts, eval_opts;
  SynthOptions synth;
  std::string checkpoint;

  auto* train = app.add_subcommand("train", "Train one projection model");
  AddCommonOptions(train, train_opts, true);
  train->add_option("--method", train_opts.methods, "Method name")->expected(1);

  auto* bench = app.add_subcommand("bench", "Repeated-seed comparison of methods");
  AddCommonOptions(bench, bench_opts, true);
  bench->add_option("--method", bench_opts.methods, "Method name (repeatable)");

  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic task to disk");
  AddCommonOptions(synth_cmd, synth_opts, false);
  synth_cmd->add_option("--acoustic-dim", synth.acoustic_dim);
  synth_cmd->add_option("--semantic-dim", synth.semantic_dim);
  synth_cmd->add_option("--seen", synth.seen, "Number of seen classes");
  synth_cmd->add_option("--unseen", synth.unseen, "Number of unseen classes");
  synth_cmd->add_option("--samples", synth.samples, "Samples per class");
  synth_cmd->add_option("--val-samples", synth.val_samples);
  synth_cmd->add_option("--noise", synth.noise);
  synth_cmd->add_option("--noise-dof", synth.noise_dof, "Student-t noise dof (0 = Gaussian)");
  synth_cmd->add_option("--map", synth.map, "linear | tanh-mlp");

  auto* eval = app.add_subcommand("eval", "Classify the test split with a checkpoint");
  AddCommonOptions(eval, eval_opts, true);
  eval->add_option("--checkpoint", checkpoint, "Model checkpoint")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*train) return CmdTrain(train_opts, out);
    if (*bench) return CmdBench(bench_opts, out, err);
    if (*synth_cmd) return CmdSynth(synth_opts, synth, out);
    if (*eval) return CmdEval(eval_opts, checkpoint, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitConfig;
}

}  // namespace zsl
