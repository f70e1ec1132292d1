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

#ifndef ZSL_PROJECTION_H_
#define ZSL_PROJECTION_H_

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "zsl/embedding.h"
#include "zsl/matrix.h"

namespace zsl {

enum class Activation { kNone, kRelu, kSigmoid, kTanh };
enum class ModelKind { kBilinear, kFactoredLinear, kFc2, kFc3 };

// Compatibility F between a projected acoustic embedding and a class
// embedding. Euclidean distance is negated so that every kind is maximized.
enum class Compatibility { kDot, kCosine, kNegativeEuclidean };

// Parameter sets of the projection T: R^{d_a} -> R^{d_s}. No variant has a
// bias. Shapes: W d_a x d_s, U d_a x r, Q r x r, V r x d_s.
struct BilinearParams {
  Matrix w;
  bool operator==(const BilinearParams&) const = default;
};
struct FactoredLinearParams {
  Matrix u, v;
  bool operator==(const FactoredLinearParams&) const = default;
};
struct Fc2Params {
  Matrix u, v;
  Activation activation = Activation::kTanh;
  bool operator==(const Fc2Params&) const = default;
};
struct Fc3Params {
  Matrix u, q, v;
  Activation activation = Activation::kTanh;
  bool operator==(const Fc3Params&) const = default;
};

// Shape of a model family: kind, activation (kNone for the linear kinds) and
// inner rank r (0 selects full rank min(d_a, d_s); unused by Bilinear).
struct ModelSpec {
  ModelKind kind = ModelKind::kBilinear;
  Activation activation = Activation::kNone;
  size_t rank = 0;
  bool operator==(const ModelSpec&) const = default;
};

class ProjectionModel {
 public:
  using Params =
      std::variant<BilinearParams, FactoredLinearParams, Fc2Params, Fc3Params>;

  // Throws ConfigError on inconsistent shapes, r > min(d_a, d_s), or a
  // nonlinear variant with Activation::kNone.
  explicit ProjectionModel(Params params, uint64_t seed = 0);

  ModelKind kind() const;
  Activation activation() const;
  size_t acoustic_dim() const;
  size_t semantic_dim() const;
  // Inner dimension r; min(d_a, d_s) for Bilinear.
  size_t rank() const;
  uint64_t seed() const { return seed_; }
  const Params& params() const { return params_; }
  Params& mutable_params() { return params_; }

  // Parameter matrices in a fixed order: W | U, V | U, V | U, Q, V.
  std::vector<const Matrix*> matrices() const;
  std::vector<Matrix*> mutable_matrices();
  std::vector<std::string> matrix_names() const;

  // Same shape and metadata, all parameters zero.
  ProjectionModel ZerosLike() const;
  double SquaredNorm() const;
  bool AllFinite() const;

  bool operator==(const ProjectionModel&) const = default;

 private:
  Params params_;
  uint64_t seed_;
};

// Intermediate values of one forward pass, kept for backpropagation.
struct ForwardTrace {
  std::vector<double> pre1, hidden1;  // U^T theta and t(U^T theta)
  std::vector<double> pre2, hidden2;  // Q hidden1 and t(Q hidden1), FC3 only
  std::vector<double> output;         // T(theta), length d_s
};

// Evaluates the projection as a fixed sequence of matrix-vector products:
//   Bilinear        W^T theta
//   FactoredLinear  V^T (U^T theta)
//   FC2             V^T t(U^T theta)
//   FC3             V^T t(Q t(U^T theta))
void Forward(const ProjectionModel& model, std::span<const double> acoustic,
             ForwardTrace& trace);

// Accumulates scale * dT/dparams^T grad_output into grad (a model of the
// same shape, e.g. from ZerosLike()).
void Backward(const ProjectionModel& model, std::span<const double> acoustic,
              const ForwardTrace& trace, std::span<const double> grad_output,
              double scale, ProjectionModel& grad);

// T(theta). Throws DataError on a dimension mismatch and NumericError on a
// non-finite result.
EmbeddingVector Project(const ProjectionModel& model,
                        const EmbeddingVector& acoustic);

double ApplyActivation(Activation kind, double x);
EmbeddingVector ApplyActivation(Activation kind, const EmbeddingVector& v);

// Raw-span form used in the hot paths; throws NumericError for cosine with a
// zero-norm argument.
double CompatibilityScore(Compatibility kind, std::span<const double> a,
                          std::span<const double> b);
double CompatibilityScore(Compatibility kind, const EmbeddingVector& a,
                          const EmbeddingVector& b);

// grad_a += coeff * dF(a, b)/da. Negative Euclidean uses the zero
// subgradient at a == b; cosine throws NumericError at a zero-norm argument.
void AccumulateCompatibilityGradient(Compatibility kind,
                                     std::span<const double> a,
                                     std::span<const double> b, double coeff,
                                     std::span<double> grad_a);

// Entries drawn from U(-1/sqrt(fan_in), +1/sqrt(fan_in)), fan_in being the
// input width of each matrix (d_a for W and U, r for Q and V). Matrices are
// filled in matrices() order, row-major, from one Rng(seed) stream.
ProjectionModel InitModel(const ModelSpec& spec, size_t acoustic_dim,
                          size_t semantic_dim, uint64_t seed);

// Method names: bilinear, factored, fc2_<act>, fc3_<act> with act in
// {relu, sigmoid, tanh}. Throws ConfigError on unknown names.
ModelSpec ParseMethod(const std::string& name);
std::string MethodName(const ModelSpec& spec);

std::string ToString(Activation a);
std::string ToString(ModelKind k);
std::string ToString(Compatibility c);
Activation ParseActivation(const std::string& s);
ModelKind ParseModelKind(const std::string& s);
Compatibility ParseCompatibility(const std::string& s);

}  // namespace zsl

#endif  // ZSL_PROJECTION_H_
