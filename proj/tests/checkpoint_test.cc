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

#include "zsl/checkpoint.h"

#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "oracles.h"
#include "zsl/error.h"

namespace zsl {
namespace {

ProjectionModel Reparse(const std::string& text) {
  std::istringstream in(text);
  return ReadCheckpoint(in, "ckpt");
}

TEST_CASE("checkpoints round-trip exactly for every variant") {
  Rng rng(12);
  for (const char* name : {"bilinear", "factored", "fc2_relu", "fc3_sigmoid", "fc3_tanh"}) {
    ProjectionModel m = InitModel(ParseMethod(name), 6, 4, 77);
    for (Matrix* mat : m.mutable_matrices())
      for (double& v : mat->data()) v = rng.Normal() * 1e-3 + v;
    const std::string text = CheckpointToString(m);
    ProjectionModel back = Reparse(text);
    CHECK(back == m);
    CHECK(CheckpointToString(back) == text);
  }
}

TEST_CASE("checkpoint header") {
  ProjectionModel m = InitModel(ParseMethod("fc2_tanh"), 3, 2, 9);
  const std::string text = CheckpointToString(m);
  CHECK(text.rfind("zsl-checkpoint 1\n", 0) == 0);
  CHECK(text.find("activation tanh\n") != std::string::npos);
  CHECK(text.find("matrix U 3 2\n") != std::string::npos);
}

TEST_CASE("malformed checkpoints are data errors") {
  ProjectionModel m = InitModel(ParseMethod("factored"), 3, 2, 1);
  const std::string text = CheckpointToString(m);
  CHECK_THROWS_AS(Reparse(""), DataError);
  CHECK_THROWS_AS(Reparse("zsl-checkpoint 2\n"), DataError);
  CHECK_THROWS_AS(Reparse(text.substr(0, text.size() / 2)), DataError);
  std::string bad = text;
  bad.replace(bad.rfind(' ') + 1, 1, "x");
  CHECK_THROWS_AS(Reparse(bad), DataError);
}

TEST_CASE("checkpoint files") {
  const auto path = std::filesystem::temp_directory_path() / "zsl_ckpt_test.ckpt";
  ProjectionModel m = InitModel(ParseMethod("bilinear"), 3, 2, 4);
  SaveCheckpoint(path, m);
  CHECK(LoadCheckpoint(path) == m);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(LoadCheckpoint(path), DataError);
}

}  // namespace
}  // namespace zsl
