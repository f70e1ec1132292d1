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

#ifndef ZSL_ERROR_H_
#define ZSL_ERROR_H_

#include <stdexcept>
#include <string>

namespace zsl {

// Malformed configuration or invalid parameter combination.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data: unreadable files, malformed lines, inconsistent
// dimensions, unknown ids.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Undefined or non-finite numerics (divergence, zero-norm cosine, ...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zsl

#endif  // ZSL_ERROR_H_
