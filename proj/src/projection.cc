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

#include "zsl/projection.h"

#include <algorithm>
#include <cmath>

#include "zsl/error.h"
#include "zsl/rng.h"

namespace zsl {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void ActivateInPlace(Activation kind, std::span<double> v) {
  for (double& x : v) x = ApplyActivation(kind, x);
}

// d t(a)/da expressed through a (pre-activation) and h = t(a).
double ActivationDerivative(Activation kind, double a, double h) {
  switch (kind) {
    case Activation::kRelu: return a > 0.0 ? 1.0 : 0.0;
    case Activation::kSigmoid: return h * (1.0 - h);
    case Activation::kTanh: return 1.0 - h * h;
    case Activation::kNone: return 1.0;
  }
  return 1.0;
}

void Require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void CheckShapes(const ProjectionModel::Params& params) {
  std::visit(
      Overloaded{
          [](const BilinearParams& p) {
            Require(p.w.rows() > 0 && p.w.cols() > 0, "empty W");
          },
          [](const FactoredLinearParams& p) {
            Require(p.u.rows() > 0 && p.u.cols() > 0 && p.v.cols() > 0,
                    "empty U or V");
            Require(p.u.cols() == p.v.rows(), "U and V disagree on rank");
          },
          [](const Fc2Params& p) {
            Require(p.u.rows() > 0 && p.u.cols() > 0 && p.v.cols() > 0,
                    "empty U or V");
            Require(p.u.cols() == p.v.rows(), "U and V disagree on rank");
            Require(p.activation != Activation::kNone,
                    "FC2 needs an activation");
          },
          [](const Fc3Params& p) {
            Require(p.u.rows() > 0 && p.u.cols() > 0 && p.v.cols() > 0,
                    "empty U or V");
            Require(p.q.rows() == p.u.cols() && p.q.cols() == p.u.cols(),
                    "Q must be r x r");
            Require(p.u.cols() == p.v.rows(), "U and V disagree on rank");
            Require(p.activation != Activation::kNone,
                    "FC3 needs an activation");
          },
      },
      params);
}

}  // namespace

ProjectionModel::ProjectionModel(Params params, uint64_t seed)
    : params_(std::move(params)), seed_(seed) {
  CheckShapes(params_);
  if (kind() != ModelKind::kBilinear) {
    Require(rank() <= std::min(acoustic_dim(), semantic_dim()),
            "rank " + std::to_string(rank()) + " exceeds min(d_a, d_s) = " +
                std::to_string(std::min(acoustic_dim(), semantic_dim())));
  }
}

ModelKind ProjectionModel::kind() const {
  return static_cast<ModelKind>(params_.index());
}

Activation ProjectionModel::activation() const {
  if (auto* p = std::get_if<Fc2Params>(&params_)) return p->activation;
  if (auto* p = std::get_if<Fc3Params>(&params_)) return p->activation;
  return Activation::kNone;
}

size_t ProjectionModel::acoustic_dim() const { return matrices().front()->rows(); }
size_t ProjectionModel::semantic_dim() const { return matrices().back()->cols(); }

size_t ProjectionModel::rank() const {
  if (kind() == ModelKind::kBilinear) {
    return std::min(acoustic_dim(), semantic_dim());
  }
  return matrices().front()->cols();
}

std::vector<const Matrix*> ProjectionModel::matrices() const {
  return std::visit(
      Overloaded{
          [](const BilinearParams& p) -> std::vector<const Matrix*> {
            return {&p.w};
          },
          [](const FactoredLinearParams& p) -> std::vector<const Matrix*> {
            return {&p.u, &p.v};
          },
          [](const Fc2Params& p) -> std::vector<const Matrix*> {
            return {&p.u, &p.v};
          },
          [](const Fc3Params& p) -> std::vector<const Matrix*> {
            return {&p.u, &p.q, &p.v};
          },
      },
      params_);
}

std::vector<Matrix*> ProjectionModel::mutable_matrices() {
  return std::visit(
      Overloaded{
          [](BilinearParams& p) -> std::vector<Matrix*> { return {&p.w}; },
          [](FactoredLinearParams& p) -> std::vector<Matrix*> {
            return {&p.u, &p.v};
          },
          [](Fc2Params& p) -> std::vector<Matrix*> { return {&p.u, &p.v}; },
          [](Fc3Params& p) -> std::vector<Matrix*> {
            return {&p.u, &p.q, &p.v};
          },
      },
      params_);
}

std::vector<std::string> ProjectionModel::matrix_names() const {
  switch (kind()) {
    case ModelKind::kBilinear: return {"W"};
    case ModelKind::kFc3: return {"U", "Q", "V"};
    default: return {"U", "V"};
  }
}

ProjectionModel ProjectionModel::ZerosLike() const {
  ProjectionModel out = *this;
  for (Matrix* m : out.mutable_matrices()) m->Scale(0.0);
  return out;
}

double ProjectionModel::SquaredNorm() const {
  double sum = 0.0;
  for (const Matrix* m : matrices()) sum += m->SquaredNorm();
  return sum;
}

bool ProjectionModel::AllFinite() const {
  for (const Matrix* m : matrices()) {
    if (!m->AllFinite()) return false;
  }
  return true;
}

void Forward(const ProjectionModel& model, std::span<const double> acoustic,
             ForwardTrace& trace) {
  std::visit(
      Overloaded{
          [&](const BilinearParams& p) {
            trace.output.resize(p.w.cols());
            p.w.MulTransposed(acoustic, trace.output);
          },
          [&](const FactoredLinearParams& p) {
            trace.pre1.resize(p.u.cols());
            p.u.MulTransposed(acoustic, trace.pre1);
            trace.output.resize(p.v.cols());
            p.v.MulTransposed(trace.pre1, trace.output);
          },
          [&](const Fc2Params& p) {
            trace.pre1.resize(p.u.cols());
            p.u.MulTransposed(acoustic, trace.pre1);
            trace.hidden1 = trace.pre1;
            ActivateInPlace(p.activation, trace.hidden1);
            trace.output.resize(p.v.cols());
            p.v.MulTransposed(trace.hidden1, trace.output);
          },
          [&](const Fc3Params& p) {
            trace.pre1.resize(p.u.cols());
            p.u.MulTransposed(acoustic, trace.pre1);
            trace.hidden1 = trace.pre1;
            ActivateInPlace(p.activation, trace.hidden1);
            trace.pre2.resize(p.q.rows());
            p.q.Mul(trace.hidden1, trace.pre2);
            trace.hidden2 = trace.pre2;
            ActivateInPlace(p.activation, trace.hidden2);
            trace.output.resize(p.v.cols());
            p.v.MulTransposed(trace.hidden2, trace.output);
          },
      },
      model.params());
}

void Backward(const ProjectionModel& model, std::span<const double> acoustic,
              const ForwardTrace& trace, std::span<const double> grad_output,
              double scale, ProjectionModel& grad) {
  auto& gparams = grad.mutable_params();
  std::visit(
      Overloaded{
          [&](const BilinearParams&) {
            auto& g = std::get<BilinearParams>(gparams);
            g.w.AddOuter(scale, acoustic, grad_output);
          },
          [&](const FactoredLinearParams& p) {
            auto& g = std::get<FactoredLinearParams>(gparams);
            g.v.AddOuter(scale, trace.pre1, grad_output);
            std::vector<double> d_pre1(p.v.rows());
            p.v.Mul(grad_output, d_pre1);
            g.u.AddOuter(scale, acoustic, d_pre1);
          },
          [&](const Fc2Params& p) {
            auto& g = std::get<Fc2Params>(gparams);
            g.v.AddOuter(scale, trace.hidden1, grad_output);
            std::vector<double> d_pre1(p.v.rows());
            p.v.Mul(grad_output, d_pre1);
            for (size_t k = 0; k < d_pre1.size(); ++k) {
              d_pre1[k] *= ActivationDerivative(p.activation, trace.pre1[k],
                                                trace.hidden1[k]);
            }
            g.u.AddOuter(scale, acoustic, d_pre1);
          },
          [&](const Fc3Params& p) {
            auto& g = std::get<Fc3Params>(gparams);
            g.v.AddOuter(scale, trace.hidden2, grad_output);
            std::vector<double> d_pre2(p.v.rows());
            p.v.Mul(grad_output, d_pre2);
            for (size_t k = 0; k < d_pre2.size(); ++k) {
              d_pre2[k] *= ActivationDerivative(p.activation, trace.pre2[k],
                                                trace.hidden2[k]);
            }
            g.q.AddOuter(scale, d_pre2, trace.hidden1);
            std::vector<double> d_pre1(p.q.cols());
            p.q.MulTransposed(d_pre2, d_pre1);
            for (size_t k = 0; k < d_pre1.size(); ++k) {
              d_pre1[k] *= ActivationDerivative(p.activation, trace.pre1[k],
                                                trace.hidden1[k]);
            }
            g.u.AddOuter(scale, acoustic, d_pre1);
          },
      },
      model.params());
}

EmbeddingVector Project(const ProjectionModel& model,
                        const EmbeddingVector& acoustic) {
  if (acoustic.dim() != model.acoustic_dim()) {
    throw DataError("acoustic embedding has dimension " +
                    std::to_string(acoustic.dim()) + ", model expects " +
                    std::to_string(model.acoustic_dim()));
  }
  ForwardTrace trace;
  Forward(model, acoustic.values(), trace);
  for (double v : trace.output) {
    if (!std::isfinite(v)) throw NumericError("projection is not finite");
  }
  return EmbeddingVector(std::move(trace.output));
}

double ApplyActivation(Activation kind, double x) {
  switch (kind) {
    case Activation::kRelu: return x > 0.0 ? x : 0.0;
    case Activation::kSigmoid: return 1.0 / (1.0 + std::exp(-x));
    case Activation::kTanh: return std::tanh(x);
    case Activation::kNone: return x;
  }
  return x;
}

EmbeddingVector ApplyActivation(Activation kind, const EmbeddingVector& v) {
  std::vector<double> out(v.values().begin(), v.values().end());
  ActivateInPlace(kind, out);
  return EmbeddingVector(std::move(out));
}

namespace {

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

}  // namespace

double CompatibilityScore(Compatibility kind, std::span<const double> a,
                          std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DataError("compatibility of vectors with dimensions " +
                    std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
  }
  switch (kind) {
    case Compatibility::kDot:
      return Dot(a, b);
    case Compatibility::kCosine: {
      const double na = Norm(a), nb = Norm(b);
      if (na == 0.0 || nb == 0.0) {
        throw NumericError("cosine compatibility of a zero-norm vector");
      }
      return Dot(a, b) / (na * nb);
    }
    case Compatibility::kNegativeEuclidean: {
      double sum = 0.0;
      for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
      }
      return -std::sqrt(sum);
    }
  }
  return 0.0;
}

double CompatibilityScore(Compatibility kind, const EmbeddingVector& a,
                          const EmbeddingVector& b) {
  return CompatibilityScore(kind, a.values(), b.values());
}

void AccumulateCompatibilityGradient(Compatibility kind,
                                     std::span<const double> a,
                                     std::span<const double> b, double coeff,
                                     std::span<double> grad_a) {
  switch (kind) {
    case Compatibility::kDot:
      for (size_t i = 0; i < a.size(); ++i) grad_a[i] += coeff * b[i];
      return;
    case Compatibility::kCosine: {
      const double na = Norm(a), nb = Norm(b);
      if (na == 0.0 || nb == 0.0) {
        throw NumericError("cosine gradient undefined at a zero-norm vector");
      }
      // d/da (a.b / |a||b|) = b/(|a||b|) - (a.b) a/(|a|^3 |b|)
      const double ab = Dot(a, b);
      const double c1 = coeff / (na * nb);
      const double c2 = coeff * ab / (na * na * na * nb);
      for (size_t i = 0; i < a.size(); ++i) grad_a[i] += c1 * b[i] - c2 * a[i];
      return;
    }
    case Compatibility::kNegativeEuclidean: {
      double sum = 0.0;
      for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
      }
      const double dist = std::sqrt(sum);
      if (dist == 0.0) return;
      const double c = -coeff / dist;
      for (size_t i = 0; i < a.size(); ++i) grad_a[i] += c * (a[i] - b[i]);
      return;
    }
  }
}

ProjectionModel InitModel(const ModelSpec& spec, size_t acoustic_dim,
                          size_t semantic_dim, uint64_t seed) {
  if (acoustic_dim == 0 || semantic_dim == 0) {
    throw ConfigError("model dimensions must be positive");
  }
  const size_t full = std::min(acoustic_dim, semantic_dim);
  const size_t r = spec.rank == 0 ? full : spec.rank;
  if (spec.kind != ModelKind::kBilinear && r > full) {
    throw ConfigError("rank " + std::to_string(r) + " exceeds min(d_a, d_s) = " +
                      std::to_string(full));
  }
  Rng rng(seed);
  auto fill = [&rng](Matrix& m, size_t fan_in) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (double& v : m.data()) v = rng.Uniform(-bound, bound);
  };
  ProjectionModel::Params params;
  switch (spec.kind) {
    case ModelKind::kBilinear: {
      BilinearParams p{Matrix(acoustic_dim, semantic_dim)};
      fill(p.w, acoustic_dim);
      params = std::move(p);
      break;
    }
    case ModelKind::kFactoredLinear: {
      FactoredLinearParams p{Matrix(acoustic_dim, r), Matrix(r, semantic_dim)};
      fill(p.u, acoustic_dim);
      fill(p.v, r);
      params = std::move(p);
      break;
    }
    case ModelKind::kFc2: {
      Fc2Params p{Matrix(acoustic_dim, r), Matrix(r, semantic_dim),
                  spec.activation};
      fill(p.u, acoustic_dim);
      fill(p.v, r);
      params = std::move(p);
      break;
    }
    case ModelKind::kFc3: {
      Fc3Params p{Matrix(acoustic_dim, r), Matrix(r, r), Matrix(r, semantic_dim),
                  spec.activation};
      fill(p.u, acoustic_dim);
      fill(p.q, r);
      fill(p.v, r);
      params = std::move(p);
      break;
    }
  }
  return ProjectionModel(std::move(params), seed);
}

std::string ToString(Activation a) {
  switch (a) {
    case Activation::kNone: return "none";
    case Activation::kRelu: return "relu";
    case Activation::kSigmoid: return "sigmoid";
    case Activation::kTanh: return "tanh";
  }
  return "none";
}

std::string ToString(ModelKind k) {
  switch (k) {
    case ModelKind::kBilinear: return "bilinear";
    case ModelKind::kFactoredLinear: return "factored";
    case ModelKind::kFc2: return "fc2";
    case ModelKind::kFc3: return "fc3";
  }
  return "bilinear";
}

std::string ToString(Compatibility c) {
  switch (c) {
    case Compatibility::kDot: return "dot";
    case Compatibility::kCosine: return "cosine";
    case Compatibility::kNegativeEuclidean: return "negative_euclidean";
  }
  return "dot";
}

Activation ParseActivation(const std::string& s) {
  if (s == "none") return Activation::kNone;
  if (s == "relu") return Activation::kRelu;
  if (s == "sigmoid") return Activation::kSigmoid;
  if (s == "tanh") return Activation::kTanh;
  throw ConfigError("unknown activation '" + s + "'");
}

ModelKind ParseModelKind(const std::string& s) {
  if (s == "bilinear") return ModelKind::kBilinear;
  if (s == "factored") return ModelKind::kFactoredLinear;
  if (s == "fc2") return ModelKind::kFc2;
  if (s == "fc3") return ModelKind::kFc3;
  throw ConfigError("unknown model kind '" + s + "'");
}

Compatibility ParseCompatibility(const std::string& s) {
  if (s == "dot") return Compatibility::kDot;
  if (s == "cosine") return Compatibility::kCosine;
  if (s == "negative_euclidean" || s == "euclidean") {
    return Compatibility::kNegativeEuclidean;
  }
  throw ConfigError("unknown compatibility '" + s + "'");
}

ModelSpec ParseMethod(const std::string& name) {
  if (name == "bilinear") return {ModelKind::kBilinear, Activation::kNone, 0};
  if (name == "factored") {
    return {ModelKind::kFactoredLinear, Activation::kNone, 0};
  }
  auto sep = name.find('_');
  if (sep != std::string::npos) {
    const std::string head = name.substr(0, sep);
    const std::string act = name.substr(sep + 1);
    if ((head == "fc2" || head == "fc3") && act != "none") {
      Activation a;
      try {
        a = ParseActivation(act);
      } catch (const ConfigError&) {
        throw ConfigError("unknown method '" + name + "'");
      }
      return {head == "fc2" ? ModelKind::kFc2 : ModelKind::kFc3, a, 0};
    }
  }
  throw ConfigError("unknown method '" + name + "'");
}

std::string MethodName(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::kBilinear:
    case ModelKind::kFactoredLinear:
      return ToString(spec.kind);
    default:
      return ToString(spec.kind) + "_" + ToString(spec.activation);
  }
}

}  // namespace zsl
