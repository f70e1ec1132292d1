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

#ifndef ZSL_RNG_H_
#define ZSL_RNG_H_

#include <cstdint>
#include <random>
#include <span>

namespace zsl {

// The single random source used throughout the library.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are implementation-defined, so the
// conversions below are spelled out here to keep every seeded result
// identical across toolchains:
//   Uniform01  top 53 bits of one draw, scaled by 2^-53, in [0, 1).
//   Normal     Box-Muller on two Uniform01 draws (no cached spare).
//   Below(n)   rejection sampling on the largest multiple of n.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }
  double Uniform01();
  double Uniform(double lo, double hi);
  double Normal();
  uint64_t Below(uint64_t n);

  // Fisher-Yates, last element first.
  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(Below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Derives an independent seed for a named sub-stream (splitmix64 mix).
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

}  // namespace zsl

#endif  // ZSL_RNG_H_
