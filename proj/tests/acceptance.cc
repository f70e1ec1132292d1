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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cli_support.h"
#include "gradient_check.h"
#include "oracles.h"
#include "zsl/error.h"
#include "zsl/evaluation.h"
#include "zsl/experiment.h"
#include "zsl/stats.h"
#include "zsl/synthetic.h"
#include "zsl/trainer.h"
#include "zsl/warp_loss.h"

namespace zsl {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

const std::pair<ModelKind, Activation> kVariants[] = {
    {ModelKind::kBilinear, Activation::kNone},
    {ModelKind::kFactoredLinear, Activation::kNone},
    {ModelKind::kFc2, Activation::kRelu},
    {ModelKind::kFc2, Activation::kSigmoid},
    {ModelKind::kFc2, Activation::kTanh},
    {ModelKind::kFc3, Activation::kRelu},
    {ModelKind::kFc3, Activation::kSigmoid},
    {ModelKind::kFc3, Activation::kTanh},
};

// 1. Analytic gradients against central differences.
Outcome GradientCorrectness() {
  const auto start = Clock::now();
  Rng rng(1);
  double worst = 0.0;
  int points = 0, resampled = 0;
  bool enough = true;
  for (auto [kind, act] : kVariants) {
    for (Compatibility c : {Compatibility::kDot, Compatibility::kNegativeEuclidean}) {
      oracle::RandomTask task = oracle::MakeRandomTask(8, 6, 5, 10, rng);
      int used = 0;
      for (int attempt = 0; attempt < 200 && used < 10; ++attempt) {
        ProjectionModel m = oracle::RandomModel(kind, act, 8, 6, 4, rng);
        WarpConfig cfg;
        cfg.compat = c;
        cfg.l2_lambda = 0.01;
        auto r = testing::CheckGradient(task, m, cfg, 1e-5, 1e-6);
        if (!r.usable) {
          ++resampled;
          continue;
        }
        ++used;
        worst = std::max(worst, r.max_rel_error);
      }
      points += used;
      if (used < 10) enough = false;
    }
  }
  const double secs = Seconds(start);
  return {enough && worst < 1e-5 && secs < 60.0,
          Fmt("max rel err %.2e over %d points (%d kink points resampled), %.1f s",
              worst, points, resampled, secs)};
}

// 2. warp_objective against the double-loop reference.
Outcome OracleEquivalence() {
  Rng rng(2);
  double worst = 0.0;
  int evaluations = 0, zero_rank = 0;
  const Activation acts[] = {Activation::kRelu, Activation::kSigmoid, Activation::kTanh};
  for (int t = 0; t < 100; ++t) {
    const size_t classes = 2 + rng.Below(4), instances = 1 + rng.Below(10);
    oracle::RandomTask task = oracle::MakeRandomTask(5, 4, classes, instances, rng);
    for (auto kind : {ModelKind::kBilinear, ModelKind::kFactoredLinear, ModelKind::kFc2,
                      ModelKind::kFc3}) {
      for (Compatibility c : {Compatibility::kDot, Compatibility::kCosine,
                              Compatibility::kNegativeEuclidean}) {
        // Every fifth model is scaled up so that many instances clear all
        // margins and take the 0/0 branch.
        const double scale = t % 5 == 0 ? 4.0 : 0.5;
        WarpConfig cfg;
        cfg.compat = c;
        cfg.l2_lambda = t % 2 ? 0.0 : 0.01;
        // Cosine is undefined where a relu model projects to zero; redraw.
        ProjectionModel m = oracle::RandomModel(kind, acts[t % 3], 5, 4, 3, rng, scale);
        std::optional<LossReport> report;
        for (int draw = 0; !report; ++draw) {
          try {
            report = WarpObjective(task.data, task.classes, m, cfg);
          } catch (const NumericError&) {
            if (draw == 100) throw;
            m = oracle::RandomModel(kind, acts[t % 3], 5, 4, 3, rng, scale);
          }
        }
        const LossReport& r = *report;
        const double want = oracle::WarpObjective(task.data, task.classes, m, c, cfg.l2_lambda);
        worst = std::max(worst, std::fabs(r.objective - want));
        for (const auto& p : r.per_instance) zero_rank += p.rank == 0;
        ++evaluations;
      }
    }
  }
  // A task where every instance clears every margin: objective exactly 0.
  LabeledDataset ds(2);
  ds.Add("x", EmbeddingVector({3.0, 0.0}), "a");
  ds.Add("y", EmbeddingVector({0.0, 3.0}), "b");
  ClassTable cls(2);
  cls.Add("a", EmbeddingVector({1.0, 0.0}));
  cls.Add("b", EmbeddingVector({0.0, 1.0}));
  ProjectionModel id(BilinearParams{Matrix::Identity(2)});
  const double zero = WarpObjective(ds, cls, id, {}).objective;
  const double zero_ref = oracle::WarpObjective(ds, cls, id, Compatibility::kDot, 0.0);
  const bool zero_ok = zero == 0.0 && zero_ref == 0.0;
  return {worst <= 1e-12 && zero_ok && zero_rank > 0,
          Fmt("max |diff| %.2e over %d evaluations on 100 tasks, %d rank-0 instances, "
              "all-margins task objective %g",
              worst, evaluations, zero_rank, zero)};
}

// 3. FactoredLinear(U = W, V = I) reproduces Bilinear(W).
Outcome RepresentationEquivalence() {
  Rng rng(3);
  const size_t da = 16, ds = 12;
  Matrix w = oracle::RandomMatrix(da, ds, rng);
  ProjectionModel bilinear(BilinearParams{w});
  ProjectionModel factored(FactoredLinearParams{w, Matrix::Identity(ds)});
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> x(da);
    for (double& v : x) v = rng.Normal() * 3.0;
    EmbeddingVector theta(x);
    EmbeddingVector a = Project(bilinear, theta), b = Project(factored, theta);
    for (size_t j = 0; j < ds; ++j) worst = std::max(worst, std::fabs(a[j] - b[j]));
  }
  return {worst <= 1e-12, Fmt("max |diff| %.2e over 1000 inputs", worst)};
}

// 4. beta(r).
Outcome BetaFunction() {
  const bool exact = RankingErrorBeta(0) == 0.0 && RankingErrorBeta(1) == 1.0 &&
                     RankingErrorBeta(3) == 11.0 / 6.0;
  bool monotone = true;
  double prev_inc = INFINITY;
  for (size_t r = 0; r < 100; ++r) {
    const double inc = RankingErrorBeta(r + 1) - RankingErrorBeta(r);
    if (!(inc >= 0.0) || inc > prev_inc) monotone = false;
    prev_inc = inc;
  }
  return {exact && monotone,
          Fmt("beta(0)=%g beta(1)=%g beta(3)=%.17g (11/6=%.17g), monotone with "
              "non-increasing steps on [0,100]: %s",
              RankingErrorBeta(0), RankingErrorBeta(1), RankingErrorBeta(3), 11.0 / 6.0,
              monotone ? "yes" : "no")};
}

// 5. Zero-shot sanity on the zero-noise linear task.
Outcome ZeroShotSanity() {
  const auto start = Clock::now();
  SyntheticSpec spec;  // d_a 16, d_s 12, 8 seen, 8 unseen, 30 per class, noise 0
  DataSplits s = SplitsFromSynthetic(GenerateSyntheticTask(spec));
  TrainConfig c;
  c.model = ParseMethod("bilinear");
  c.learning_rate = 0.05;
  c.epochs = 300;
  c.l2_lambda = 0.03;
  TrainResult r = Train(s.train, s.train_classes, s.val, s.val_classes, c);
  const double top1 = Top1Accuracy(r.best_model, c.compat, s.test, s.test_classes);
  const double secs = Seconds(start);
  return {top1 >= 0.9 && secs < 120.0,
          Fmt("unseen TOP-1 %.4f (chance %.3f), %.1f s", top1,
              1.0 / static_cast<double>(spec.unseen_classes), secs)};
}

// 6. Ordering on the tanh-mlp task.
Outcome DirectionalOrdering() {
  const auto start = Clock::now();
  SyntheticSpec spec;
  spec.seen_classes = 40;
  spec.unseen_classes = 20;
  spec.noise = 0.5;
  spec.noise_dof = 2;
  spec.map = GroundTruthMap::kTanhMlp;
  DataSplits s = SplitsFromSynthetic(GenerateSyntheticTask(spec));
  std::vector<MethodConfig> methods;
  for (const char* name : {"bilinear", "factored", "fc2_tanh"}) {
    TrainConfig c;
    c.model = ParseMethod(name);
    c.learning_rate = 0.05;
    c.epochs = 200;
    c.l2_lambda = 0.003;
    methods.push_back({name, c});
  }
  BenchResult bench = RunBench(methods, s, 20, 0);
  if (!bench.failures.empty()) return {false, "training failed: " + bench.failures[0].message};
  const RunStatistics& bil = bench.methods[0].second.stats;
  const RunStatistics& fac = bench.methods[1].second.stats;
  const RunStatistics& fc2 = bench.methods[2].second.stats;
  TTestResult t = UnpairedTTest(fc2.per_seed_top1, bil.per_seed_top1);
  const bool pass = fc2.mean > fac.mean && fc2.mean > bil.mean && t.significant;
  return {pass, Fmt("fc2_tanh %.4f+-%.4f, factored %.4f+-%.4f, bilinear %.4f+-%.4f; "
                    "fc2_tanh vs bilinear t(%d)=%.2f p=%.2e, %.1f s",
                    fc2.mean, fc2.std, fac.mean, fac.std, bil.mean, bil.std,
                    t.degrees_of_freedom, t.t_statistic, t.p_value, Seconds(start))};
}

// 7. Statistics engine.
Outcome StatisticsEngine() {
  TTestResult a = PooledTTestFromSummary(6.3, 0.8, 20, 5.7, 1.1, 20);
  const bool a_ok = std::fabs(a.t_statistic - 1.97) <= 0.02 && a.degrees_of_freedom == 38;
  const double p = StudentTTwoSidedP(2.09, 38);
  const bool b_ok = p >= 0.042 && p <= 0.044;
  Rng rng(7);
  bool c_ok = true;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> x(2 + rng.Below(20)), y(2 + rng.Below(20));
    for (double& v : x) v = rng.Uniform01();
    for (double& v : y) v = rng.Uniform01();
    TTestResult xy = UnpairedTTest(x, y), yx = UnpairedTTest(y, x), xx = UnpairedTTest(x, x);
    if (xy.t_statistic != -yx.t_statistic || xy.p_value != yx.p_value) c_ok = false;
    if (xx.t_statistic != 0.0 || xx.p_value != 1.0) c_ok = false;
  }
  return {a_ok && b_ok && c_ok,
          Fmt("(a) t=%.4f df=%d, (b) p(2.09, 38)=%.6f, (c) antisymmetry and identical "
              "groups on 100 random pairs: %s",
              a.t_statistic, a.degrees_of_freedom, p, c_ok ? "exact" : "violated")};
}

// 8. Every CLI command is byte-reproducible.
Outcome CliDeterminism() {
  namespace fs = std::filesystem;
  using testing::RunTool;
  const fs::path root = testing::Scratch("acceptance_cli");
  testing::WriteFile(root / "exp.cfg",
                     "synth.seen_classes = 6\nsynth.unseen_classes = 4\n"
                     "synth.samples_per_class = 8\nsynth.val_samples_per_class = 4\n"
                     "synth.noise = 0.3\nsynth.map = tanh-mlp\nsynth.seed = 5\n"
                     "train.epochs = 5\ntrain.lr = 0.05\nbench.seeds = 3\n"
                     "bench.methods = bilinear, factored, fc2_tanh\n");
  const std::string cfg = (root / "exp.cfg").string();
  auto commands = [&](const std::string& tag) {
    const fs::path d = root / tag;
    std::vector<std::vector<std::string>> cmds = {
        {"synth", "--config", cfg, "--seed", "4", "--out", (d / "synth").string()},
        {"train", "--config", cfg, "--seed", "4", "--method", "fc2_tanh", "--out",
         (d / "train").string()},
        {"bench", "--config", cfg, "--seed", "4", "--out", (d / "bench").string()},
        {"eval", "--config", cfg, "--out", (d / "eval").string(), "--checkpoint",
         (d / "train" / "model.ckpt").string()},
    };
    for (const auto& c : cmds) {
      if (RunTool(c).code != 0) return false;
    }
    return true;
  };
  if (!commands("first") || !commands("second")) return {false, "a command exited non-zero"};
  int files = 0;
  bool same = true;
  for (const char* sub : {"synth", "train", "bench", "eval"}) {
    auto a = testing::Snapshot(root / "first" / sub), b = testing::Snapshot(root / "second" / sub);
    files += static_cast<int>(a.size());
    if (a != b || a.empty()) same = false;
  }
  fs::remove_all(root);
  return {same, Fmt("synth, train, bench, eval run twice: %d output files %s", files,
                    same ? "byte-identical" : "DIFFER")};
}

// 9. Activation ranges and argmax invariance.
Outcome RangesAndInvariance() {
  Rng rng(9);
  bool ranges = true;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> x(8);
    for (double& v : x) v = rng.Normal() * 3.0;
    EmbeddingVector e(x);
    const EmbeddingVector relu = ApplyActivation(Activation::kRelu, e);
    const EmbeddingVector sigmoid = ApplyActivation(Activation::kSigmoid, e);
    const EmbeddingVector tanh = ApplyActivation(Activation::kTanh, e);
    for (double v : relu.values()) ranges &= v >= 0.0;
    for (double v : sigmoid.values()) ranges &= v > 0.0 && v < 1.0;
    for (double v : tanh.values()) ranges &= v > -1.0 && v < 1.0;
  }
  oracle::RandomTask task = oracle::MakeRandomTask(8, 6, 10, 1000, rng);
  ProjectionModel m = oracle::RandomModel(ModelKind::kBilinear, Activation::kNone, 8, 6, 6, rng);
  int mismatches = 0;
  for (double c : {1e-6, 0.1, 2.0, 7.5, 1e6}) {
    ProjectionModel scaled = m;
    for (Matrix* mat : scaled.mutable_matrices()) mat->Scale(c);
    for (const auto& inst : task.data.items()) {
      mismatches += Classify(m, Compatibility::kDot, inst.acoustic, task.classes) !=
                    Classify(scaled, Compatibility::kDot, inst.acoustic, task.classes);
    }
  }
  return {ranges && mismatches == 0,
          Fmt("ranges on 1000 vectors: %s; argmax changes under 5 positive scalings of W "
              "on 1000 instances: %d",
              ranges ? "hold" : "violated", mismatches)};
}

}  // namespace
}  // namespace zsl

int main() {
  using namespace zsl;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 gradient correctness", GradientCorrectness},
      {"2 objective oracle equivalence", OracleEquivalence},
      {"3 factored/bilinear equivalence", RepresentationEquivalence},
      {"4 beta function", BetaFunction},
      {"5 zero-shot sanity", ZeroShotSanity},
      {"6 tanh-mlp ordering", DirectionalOrdering},
      {"7 statistics engine", StatisticsEngine},
      {"8 CLI determinism", CliDeterminism},
      {"9 ranges and argmax invariance", RangesAndInvariance},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
