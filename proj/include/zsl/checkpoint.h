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

#ifndef ZSL_CHECKPOINT_H_
#define ZSL_CHECKPOINT_H_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "zsl/projection.h"

namespace zsl {

// Text checkpoint:
//
//   zsl-checkpoint 1
//   kind <bilinear|factored|fc2|fc3>
//   activation <none|relu|sigmoid|tanh>
//   acoustic_dim <d_a>
//   semantic_dim <d_s>
//   rank <r>
//   seed <seed>
//   matrix <name> <rows> <cols>
//   <row 0: cols space-separated reals>
//   ...
//
// Matrices follow ProjectionModel::matrices() order. Reals use the shortest
// round-trip form, so Write -> Read reproduces the model exactly.
void WriteCheckpoint(std::ostream& out, const ProjectionModel& model);
std::string CheckpointToString(const ProjectionModel& model);
void SaveCheckpoint(const std::filesystem::path& path,
                    const ProjectionModel& model);

// Throws DataError on malformed input.
ProjectionModel ReadCheckpoint(std::istream& in, const std::string& source);
ProjectionModel LoadCheckpoint(const std::filesystem::path& path);

}  // namespace zsl

#endif  // ZSL_CHECKPOINT_H_
