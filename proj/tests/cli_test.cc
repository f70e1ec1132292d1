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

#include <filesystem>

#include "cli_support.h"
#include "doctest.h"
#include "zsl/checkpoint.h"
#include "zsl/embedding_io.h"

namespace zsl {
namespace {

namespace fs = std::filesystem;
using testing::ReadFile;
using testing::RunTool;
using testing::Scratch;
using testing::Snapshot;
using testing::WriteFile;

size_t Lines(const std::string& s) {
  size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

const char* kSmallSynth =
    "synth.seen_classes = 4\n"
    "synth.unseen_classes = 3\n"
    "synth.samples_per_class = 6\n"
    "synth.val_samples_per_class = 3\n"
    "synth.noise = 0.2\n"
    "train.epochs = 4\n"
    "train.lr = 0.05\n";

TEST_CASE("synth writes parseable files deterministically") {
  fs::path a = Scratch("cli_synth_a"), b = Scratch("cli_synth_b");
  auto r = RunTool({"synth", "--out", a.string(), "--seed", "9"});
  REQUIRE(r.code == 0);
  CHECK(ParseEmbeddingFile(a / "acoustic.emb").dim == 16);
  CHECK(ParseEmbeddingFile(a / "classes.emb").rows.size() == 16);
  CHECK(ParseManifestFile(a / "train.tsv").size() == 8 * 30);
  CHECK(ParseFoldFile(a / "folds.tsv").num_folds() == 2);
  REQUIRE(RunTool({"synth", "--out", b.string(), "--seed", "9"}).code == 0);
  CHECK(Snapshot(a) == Snapshot(b));
  REQUIRE(RunTool({"synth", "--out", b.string(), "--seed", "10"}).code == 0);
  CHECK(Snapshot(a) != Snapshot(b));
}

TEST_CASE("synth rejects invalid specs") {
  fs::path d = Scratch("cli_synth_bad");
  CHECK(RunTool({"synth", "--out", d.string(), "--seen", "0"}).code == 2);
  CHECK(RunTool({"synth", "--out", d.string(), "--noise", "-1"}).code == 2);
  CHECK(RunTool({"synth", "--out", d.string(), "--map", "cubic"}).code == 2);
}

TEST_CASE("train on a synthetic config") {
  fs::path d = Scratch("cli_train");
  WriteFile(d / "exp.cfg", kSmallSynth);
  auto r = RunTool({"train", "--config", (d / "exp.cfg").string(), "--out",
                    (d / "out").string(), "--method", "fc2_tanh"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("method\tfc2_tanh\n") == 0);
  ProjectionModel m = LoadCheckpoint(d / "out" / "model.ckpt");
  CHECK(m.kind() == ModelKind::kFc2);
  CHECK(CheckpointToString(m) == ReadFile(d / "out" / "model.ckpt"));
  CHECK(Lines(ReadFile(d / "out" / "metrics.tsv")) == 5);
}

TEST_CASE("zero epochs saves the seeded initial model") {
  fs::path d = Scratch("cli_train0");
  WriteFile(d / "exp.cfg", std::string(kSmallSynth) + "train.seed = 12\n" +
                               "method.bilinear.epochs = 0\n");
  auto r = RunTool({"train", "--config", (d / "exp.cfg").string(), "--out",
                    (d / "out").string()});
  REQUIRE(r.code == 0);
  CHECK(LoadCheckpoint(d / "out" / "final.ckpt") ==
        InitModel(ParseMethod("bilinear"), 16, 12, 12));
}

TEST_CASE("file-based round trip through synth, train and eval") {
  fs::path d = Scratch("cli_files");
  REQUIRE(RunTool({"synth", "--out", d.string(), "--seen", "4", "--unseen", "3",
                   "--samples", "5", "--val-samples", "2"}).code == 0);
  const auto inputs = Snapshot(d);
  const std::string cfg = (d / "experiment.cfg").string();
  auto t = RunTool({"train", "--config", cfg, "--out", (d / "run").string(), "--seed", "2"});
  REQUIRE(t.code == 0);
  auto e = RunTool({"eval", "--config", cfg, "--out", (d / "ev").string(), "--checkpoint",
                    (d / "run" / "model.ckpt").string()});
  REQUIRE(e.code == 0);
  CHECK(Lines(ReadFile(d / "ev" / "predictions.tsv")) == 15);
  // The test TOP-1 reported by train is the one eval recomputes.
  CHECK(t.out.find("test_top1\t" + e.out.substr(5)) != std::string::npos);
  auto now = Snapshot(d);
  for (const auto& [name, text] : inputs) CHECK(now[name] == text);
}

TEST_CASE("missing data files exit 3 naming the path") {
  fs::path d = Scratch("cli_missing");
  REQUIRE(RunTool({"synth", "--out", d.string(), "--samples", "2"}).code == 0);
  fs::remove(d / "acoustic.emb");
  auto r = RunTool({"train", "--config", (d / "experiment.cfg").string(), "--out",
                    (d / "run").string()});
  CHECK(r.code == 3);
  CHECK(r.err.find((d / "acoustic.emb").string()) != std::string::npos);
}

TEST_CASE("exit codes for config and numeric failures") {
  fs::path d = Scratch("cli_codes");
  WriteFile(d / "bad.cfg", "synth.seen_classes = 3\nmodel.method = nope\n");
  CHECK(RunTool({"train", "--config", (d / "bad.cfg").string()}).code == 2);
  CHECK(RunTool({"train", "--config", (d / "absent.cfg").string()}).code == 2);
  CHECK(RunTool({"frobnicate"}).code == 2);
  CHECK(RunTool({"train"}).code == 2);
  CHECK(RunTool({"--help"}).code == 0);
  WriteFile(d / "boom.cfg", std::string(kSmallSynth) + "method.fc3_relu.lr = 1e150\n");
  auto r = RunTool({"train", "--config", (d / "boom.cfg").string(), "--method", "fc3_relu",
                    "--out", (d / "out").string()});
  CHECK(r.code == 4);
  CHECK(r.err.find("epoch") != std::string::npos);
}

TEST_CASE("bench counting contract and byte-identical reruns") {
  fs::path d = Scratch("cli_bench");
  WriteFile(d / "exp.cfg", std::string(kSmallSynth) + "bench.seeds = 3\n");
  auto run = [&](const char* out) {
    return RunTool({"bench", "--config", (d / "exp.cfg").string(), "--out",
                    (d / out).string(), "--method", "bilinear", "--method", "fc2_tanh"});
  };
  REQUIRE(run("a").code == 0);
  REQUIRE(run("b").code == 0);
  CHECK(Lines(ReadFile(d / "a" / "results.tsv")) == 6);
  CHECK(Lines(ReadFile(d / "a" / "summary.tsv")) == 2);
  CHECK(Lines(ReadFile(d / "a" / "ttest.tsv")) == 1);
  CHECK(Snapshot(d / "a") == Snapshot(d / "b"));
}

TEST_CASE("bench reports a failing method and keeps going") {
  fs::path d = Scratch("cli_bench_fail");
  WriteFile(d / "exp.cfg", std::string(kSmallSynth) +
                               "bench.seeds = 2\nbench.methods = bilinear, fc3_relu\n"
                               "method.fc3_relu.lr = 1e150\n");
  auto r = RunTool({"bench", "--config", (d / "exp.cfg").string(), "--out",
                    (d / "out").string()});
  CHECK(r.code == 4);
  CHECK(Lines(ReadFile(d / "out" / "results.tsv")) == 2);
  CHECK(r.err.find("fc3_relu") != std::string::npos);
}

}  // namespace
}  // namespace zsl
