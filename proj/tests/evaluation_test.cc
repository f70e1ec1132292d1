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

#include "zsl/evaluation.h"

#include <cmath>
#include <set>

#include "doctest.h"
#include "oracles.h"
#include "zsl/error.h"

namespace zsl {
namespace {

ClassTable Axes() {
  ClassTable t(2);
  t.Add("a", EmbeddingVector({1.0, 0.0}));
  t.Add("b", EmbeddingVector({0.0, 1.0}));
  return t;
}

ProjectionModel Identity() { return ProjectionModel(BilinearParams{Matrix::Identity(2)}); }

TEST_CASE("classify examples") {
  ClassTable single(2);
  single.Add("only", EmbeddingVector({-1.0, 0.0}));
  CHECK(Classify(Identity(), Compatibility::kDot, EmbeddingVector({5, 5}), single) == "only");

  ProjectionModel fid(FactoredLinearParams{Matrix::Identity(2), Matrix::Identity(2)});
  ClassTable t(2);
  t.Add("small", EmbeddingVector({0.5, 0.0}));
  t.Add("big", EmbeddingVector({0.0, 3.0}));
  CHECK(Classify(fid, Compatibility::kDot, EmbeddingVector({0.0, 3.0}), t) == "big");

  ClassTable empty(2);
  CHECK_THROWS_AS(Classify(Identity(), Compatibility::kDot, EmbeddingVector({1, 0}), empty),
                  DataError);
}

TEST_CASE("ties go to the smallest class id") {
  ClassTable t(2);
  t.Add("zeta", EmbeddingVector({1.0, 0.0}));
  t.Add("alpha", EmbeddingVector({1.0, 0.0}));
  t.Add("mid", EmbeddingVector({1.0, 0.0}));
  CHECK(Classify(Identity(), Compatibility::kDot, EmbeddingVector({1, 1}), t) == "alpha");
}

TEST_CASE("every compatibility kind") {
  ClassTable t(2);
  t.Add("near", EmbeddingVector({1.0, 1.0}));
  t.Add("far", EmbeddingVector({10.0, 0.0}));
  EmbeddingVector x({1.0, 1.2});
  CHECK(Classify(Identity(), Compatibility::kDot, x, t) == "far");
  CHECK(Classify(Identity(), Compatibility::kCosine, x, t) == "near");
  CHECK(Classify(Identity(), Compatibility::kNegativeEuclidean, x, t) == "near");
}

TEST_CASE("top-1 examples") {
  LabeledDataset ds(2);
  ds.Add("1", EmbeddingVector({1, 0}), "a");
  ds.Add("2", EmbeddingVector({0, 1}), "a");
  ds.Add("3", EmbeddingVector({0, 1}), "a");
  ds.Add("4", EmbeddingVector({0, 1}), "b");
  ds.Add("5", EmbeddingVector({1, 0}), "b");
  CHECK(Top1Accuracy(Identity(), Compatibility::kDot, ds, Axes()) == 0.4);

  LabeledDataset right(2);
  right.Add("1", EmbeddingVector({1, 0}), "a");
  right.Add("2", EmbeddingVector({0, 1}), "b");
  CHECK(Top1Accuracy(Identity(), Compatibility::kDot, right, Axes()) == 1.0);
  LabeledDataset wrong(2);
  wrong.Add("1", EmbeddingVector({0, 1}), "a");
  wrong.Add("2", EmbeddingVector({1, 0}), "b");
  CHECK(Top1Accuracy(Identity(), Compatibility::kDot, wrong, Axes()) == 0.0);

  LabeledDataset stray(2);
  stray.Add("1", EmbeddingVector({0, 1}), "c");
  CHECK_THROWS_AS(Top1Accuracy(Identity(), Compatibility::kDot, stray, Axes()), DataError);

  auto preds = PredictAll(Identity(), Compatibility::kDot, ds, Axes());
  REQUIRE(preds.size() == 5);
  CHECK(preds[0].predicted == "a");
  CHECK(preds[4].truth == "b");
}

TEST_CASE("argmax is invariant under positive scaling of W") {
  Rng rng(31);
  oracle::RandomTask task = oracle::MakeRandomTask(6, 4, 7, 200, rng);
  ProjectionModel m = oracle::RandomModel(ModelKind::kBilinear, Activation::kNone, 6, 4, 4, rng);
  for (double c : {1e-3, 0.5, 2.0, 1e3}) {
    ProjectionModel scaled = m;
    for (Matrix* mat : scaled.mutable_matrices()) mat->Scale(c);
    for (const auto& inst : task.data.items()) {
      CHECK(Classify(m, Compatibility::kDot, inst.acoustic, task.classes) ==
            Classify(scaled, Compatibility::kDot, inst.acoustic, task.classes));
    }
  }
}

TEST_CASE("a random classifier sits near chance") {
  // Random projections against k balanced classes: accuracy concentrates
  // around 1/k.
  Rng rng(55);
  const size_t k = 5, n = 2000;
  ClassTable classes(4);
  for (size_t c = 0; c < k; ++c) {
    oracle::Vec v(4);
    for (double& x : v) x = rng.Normal();
    classes.Add("c" + std::to_string(c), EmbeddingVector(v));
  }
  size_t correct = 0;
  for (size_t i = 0; i < n; ++i) {
    ProjectionModel m = oracle::RandomModel(ModelKind::kBilinear, Activation::kNone, 4, 4, 4, rng);
    oracle::Vec x(4);
    for (double& v : x) v = rng.Normal();
    const std::string truth = classes.id(i % k);
    if (Classify(m, Compatibility::kDot, EmbeddingVector(x), classes) == truth) ++correct;
  }
  const double p = 1.0 / k, acc = static_cast<double>(correct) / n;
  CHECK(std::fabs(acc - p) < 3.0 * std::sqrt(p * (1 - p) / n));
}

}  // namespace
}  // namespace zsl
