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

#include "zsl/experiment.h"

#include <algorithm>
#include <future>
#include <set>
#include <sstream>
#include <thread>

#include "zsl/embedding_io.h"
#include "zsl/evaluation.h"

namespace zsl {
namespace {

SeedRun RunOneSeed(const TrainConfig& base, const DataSplits& splits,
                   uint64_t seed) {
  TrainConfig config = base;
  config.seed = seed;
  TrainResult result = Train(splits.train, splits.train_classes, splits.val,
                             splits.val_classes, config);
  SeedRun run;
  run.seed = seed;
  run.best_epoch = result.best_epoch;
  run.test_top1 = Top1Accuracy(result.best_model, config.compat, splits.test,
                               splits.test_classes);
  return run;
}

[[noreturn]] void RethrowWithSeed(std::exception_ptr error, uint64_t seed) {
  const std::string prefix = "seed " + std::to_string(seed) + ": ";
  try {
    std::rethrow_exception(error);
  } catch (const ConfigError& e) {
    throw ConfigError(prefix + e.what());
  } catch (const DataError& e) {
    throw DataError(prefix + e.what());
  } catch (const NumericError& e) {
    throw NumericError(prefix + e.what());
  }
}

int ExitCodeFor(std::exception_ptr error) {
  try {
    std::rethrow_exception(error);
  } catch (const ConfigError&) {
    return 2;
  } catch (const DataError&) {
    return 3;
  } catch (const NumericError&) {
    return 4;
  } catch (...) {
    return 1;
  }
}

std::string Message(std::exception_ptr error) {
  try {
    std::rethrow_exception(error);
  } catch (const std::exception& e) {
    return e.what();
  } catch (...) {
    return "unknown error";
  }
}

}  // namespace

DataSplits SplitsFromSynthetic(const SyntheticTask& task) {
  ClassTable seen = task.SeenClasses();
  return DataSplits{task.train, task.val,  task.test,
                    seen,       seen,      task.UnseenClasses()};
}

ExperimentResult RunExperiment(const std::string& method,
                               const TrainConfig& config,
                               const DataSplits& splits, size_t n_seeds,
                               uint64_t base_seed) {
  if (n_seeds == 0) throw ConfigError("number of seeds must be >= 1");
  config.Validate();
  const size_t workers =
      std::max<size_t>(1, std::min<size_t>(n_seeds, std::thread::hardware_concurrency()));
  std::vector<SeedRun> runs(n_seeds);
  std::vector<std::exception_ptr> errors(n_seeds);
  for (size_t start = 0; start < n_seeds; start += workers) {
    const size_t end = std::min(n_seeds, start + workers);
    std::vector<std::future<void>> pending;
    for (size_t i = start; i < end; ++i) {
      pending.push_back(std::async(std::launch::async, [&, i] {
        try {
          runs[i] = RunOneSeed(config, splits, base_seed + i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }));
    }
    for (auto& f : pending) f.get();
  }
  for (size_t i = 0; i < n_seeds; ++i) {
    if (errors[i]) RethrowWithSeed(errors[i], base_seed + i);
  }
  std::vector<double> accuracies;
  for (const auto& r : runs) accuracies.push_back(r.test_top1);
  return ExperimentResult{std::move(runs), SummarizeRuns(method, accuracies)};
}

BenchResult RunBench(const std::vector<MethodConfig>& methods,
                     const DataSplits& splits, size_t n_seeds,
                     uint64_t base_seed) {
  if (methods.empty()) throw ConfigError("bench needs at least one method");
  BenchResult bench;
  for (const auto& m : methods) {
    try {
      bench.methods.emplace_back(
          m.name, RunExperiment(m.name, m.config, splits, n_seeds, base_seed));
    } catch (...) {
      auto error = std::current_exception();
      bench.failures.push_back({m.name, Message(error), ExitCodeFor(error)});
    }
  }

  std::set<std::pair<std::string, std::string>> done;
  for (const char* anchor : kComparisonAnchors) {
    auto a = std::find_if(bench.methods.begin(), bench.methods.end(),
                          [&](const auto& e) { return e.first == anchor; });
    if (a == bench.methods.end()) continue;
    for (const auto& [name, result] : bench.methods) {
      if (name == anchor) continue;
      auto key = std::minmax(name, std::string(anchor));
      if (!done.insert({key.first, key.second}).second) continue;
      const auto& sa = result.stats.per_seed_top1;
      const auto& sb = a->second.stats.per_seed_top1;
      if (sa.size() < 2 || sb.size() < 2) continue;
      bench.ttests.push_back({name, anchor, UnpairedTTest(sa, sb)});
    }
  }
  return bench;
}

std::string FormatResults(const BenchResult& bench) {
  std::ostringstream out;
  for (const auto& [name, result] : bench.methods) {
    for (const auto& run : result.runs) {
      out << name << '\t' << run.seed << '\t' << FormatReal(run.test_top1)
          << '\n';
    }
  }
  return out.str();
}

std::string FormatSummary(const BenchResult& bench) {
  std::vector<const RunStatistics*> rows;
  for (const auto& entry : bench.methods) rows.push_back(&entry.second.stats);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto* a, const auto* b) { return a->mean > b->mean; });
  std::ostringstream out;
  for (const auto* s : rows) {
    out << s->method << '\t' << FormatReal(s->mean) << '\t'
        << FormatReal(s->std) << '\t' << s->per_seed_top1.size() << '\n';
  }
  return out.str();
}

std::string FormatTTests(const BenchResult& bench) {
  std::ostringstream out;
  for (const auto& row : bench.ttests) {
    out << row.method_a << '\t' << row.method_b << '\t'
        << FormatReal(row.result.t_statistic) << '\t'
        << row.result.degrees_of_freedom << '\t'
        << FormatReal(row.result.p_value) << '\t'
        << (row.result.significant ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string FormatMetrics(const TrainResult& result) {
  std::ostringstream out;
  for (const auto& m : result.per_epoch) {
    out << m.epoch << '\t' << FormatReal(m.train_objective) << '\t'
        << FormatReal(m.val_top1) << '\n';
  }
  return out.str();
}

}  // namespace zsl
