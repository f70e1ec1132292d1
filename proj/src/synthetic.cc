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

#include "zsl/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "zsl/error.h"
#include "zsl/rng.h"

namespace zsl {
namespace {

// Gaussian rows x cols matrix with orthonormalized columns (modified
// Gram-Schmidt, redrawing a column in the measure-zero degenerate case).
Matrix OrthonormalColumns(size_t rows, size_t cols, Rng& rng) {
  Matrix m(rows, cols);
  for (double& v : m.data()) v = rng.Normal();
  for (size_t j = 0; j < cols; ++j) {
    for (;;) {
      for (size_t k = 0; k < j; ++k) {
        double dot = 0.0;
        for (size_t i = 0; i < rows; ++i) dot += m(i, j) * m(i, k);
        for (size_t i = 0; i < rows; ++i) m(i, j) -= dot * m(i, k);
      }
      double norm = 0.0;
      for (size_t i = 0; i < rows; ++i) norm += m(i, j) * m(i, j);
      norm = std::sqrt(norm);
      if (norm > 1e-8) {
        for (size_t i = 0; i < rows; ++i) m(i, j) /= norm;
        break;
      }
      for (size_t i = 0; i < rows; ++i) m(i, j) = rng.Normal();
    }
  }
  return m;
}

std::vector<double> UnitNormal(size_t dim, Rng& rng) {
  for (;;) {
    std::vector<double> v(dim);
    double norm = 0.0;
    for (double& x : v) {
      x = rng.Normal();
      norm += x * x;
    }
    norm = std::sqrt(norm);
    if (norm > 1e-12) {
      for (double& x : v) x /= norm;
      return v;
    }
  }
}

std::string MakeId(char prefix, size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%c%03zu", prefix, index);
  return buf;
}

}  // namespace

std::string ToString(GroundTruthMap map) {
  return map == GroundTruthMap::kLinear ? "linear" : "tanh-mlp";
}

GroundTruthMap ParseGroundTruthMap(const std::string& s) {
  if (s == "linear") return GroundTruthMap::kLinear;
  if (s == "tanh-mlp" || s == "tanh_mlp" || s == "tanh") {
    return GroundTruthMap::kTanhMlp;
  }
  throw ConfigError("unknown ground-truth map '" + s + "'");
}

void SyntheticSpec::Validate() const {
  if (acoustic_dim == 0 || semantic_dim == 0) {
    throw ConfigError("synthetic dimensions must be positive");
  }
  if (acoustic_dim < semantic_dim) {
    throw ConfigError("synthetic tasks need acoustic_dim >= semantic_dim");
  }
  if (seen_classes == 0 || unseen_classes == 0) {
    throw ConfigError("synthetic tasks need seen and unseen classes");
  }
  if (samples_per_class == 0 || val_samples_per_class == 0) {
    throw ConfigError("synthetic sample counts must be positive");
  }
  if (!(noise >= 0.0) || !std::isfinite(noise)) {
    throw ConfigError("noise level must be >= 0");
  }
  if (!(nuisance >= 0.0) || !std::isfinite(nuisance)) {
    throw ConfigError("nuisance level must be >= 0");
  }
  if (noise_dof > 1000) {
    throw ConfigError("noise_dof must be at most 1000");
  }
  if (!(saturation > 0.0 && saturation < 1.0)) {
    throw ConfigError("saturation must lie in (0, 1)");
  }
}

SyntheticTask GenerateSyntheticTask(const SyntheticSpec& spec) {
  spec.Validate();
  const size_t da = spec.acoustic_dim, ds = spec.semantic_dim;
  Rng rng(spec.seed);

  Matrix a = OrthonormalColumns(da, ds, rng);
  Matrix b = spec.map == GroundTruthMap::kTanhMlp ? OrthonormalColumns(ds, ds, rng)
                                                  : Matrix();

  ClassTable classes(ds);
  std::vector<std::string> seen, unseen;
  std::vector<std::pair<std::string, std::vector<double>>> phis;
  for (size_t c = 0; c < spec.seen_classes + spec.unseen_classes; ++c) {
    const bool is_seen = c < spec.seen_classes;
    std::string id = is_seen ? MakeId('s', c) : MakeId('u', c - spec.seen_classes);
    (is_seen ? seen : unseen).push_back(id);
    phis.emplace_back(id, UnitNormal(ds, rng));
    classes.Add(id, EmbeddingVector(phis.back().second));
  }

  // gamma scales the rotated class embeddings so the largest |entry| over all
  // classes sits at `saturation`.
  double gamma = 1.0;
  if (spec.map == GroundTruthMap::kTanhMlp) {
    double max_abs = 0.0;
    std::vector<double> h(ds);
    for (const auto& [id, phi] : phis) {
      b.Mul(phi, h);
      for (double v : h) max_abs = std::max(max_abs, std::fabs(v));
    }
    gamma = spec.saturation / max_abs;
  }
  // Noise-free latent code of each class.
  std::map<std::string, std::vector<double>> center;
  for (const auto& [id, phi] : phis) {
    std::vector<double> z = phi;
    if (spec.map == GroundTruthMap::kTanhMlp) {
      b.Mul(phi, z);
      for (double& v : z) v = std::atanh(gamma * v);
    }
    center.emplace(id, std::move(z));
  }

  auto draw_noise = [&]() {
    const double e = rng.Normal();
    if (spec.noise_dof == 0) return e;
    double chi2 = 0.0;
    for (unsigned k = 0; k < spec.noise_dof; ++k) {
      const double q = rng.Normal();
      chi2 += q * q;
    }
    return chi2 > 0.0 ? e / std::sqrt(chi2 / spec.noise_dof) : 0.0;
  };

  auto sample = [&](const std::string& class_id) {
    std::vector<double> code = center.at(class_id);
    for (double& v : code) v += spec.noise * draw_noise();
    std::vector<double> theta(da), g(da), atg(ds);
    for (double& v : g) v = rng.Normal();
    // theta = A code + nuisance * (I - A A^T) g
    a.MulTransposed(g, atg);
    for (size_t i = 0; i < da; ++i) {
      double mapped = 0.0, proj = 0.0;
      for (size_t k = 0; k < ds; ++k) {
        mapped += a(i, k) * code[k];
        proj += a(i, k) * atg[k];
      }
      theta[i] = mapped + spec.nuisance * (g[i] - proj);
    }
    return EmbeddingVector(std::move(theta));
  };

  LabeledDataset train(da), val(da), test(da);
  char buf[64];
  for (const auto& id : seen) {
    for (size_t n = 0; n < spec.samples_per_class; ++n) {
      std::snprintf(buf, sizeof(buf), "%s-t%03zu", id.c_str(), n);
      train.Add(buf, sample(id), id);
    }
  }
  for (const auto& id : seen) {
    for (size_t n = 0; n < spec.val_samples_per_class; ++n) {
      std::snprintf(buf, sizeof(buf), "%s-v%03zu", id.c_str(), n);
      val.Add(buf, sample(id), id);
    }
  }
  for (const auto& id : unseen) {
    for (size_t n = 0; n < spec.samples_per_class; ++n) {
      std::snprintf(buf, sizeof(buf), "%s-e%03zu", id.c_str(), n);
      test.Add(buf, sample(id), id);
    }
  }

  FoldAssignment folds(2);
  for (const auto& id : seen) folds.Assign(id, 0);
  for (const auto& id : unseen) folds.Assign(id, 1);

  ProjectionModel::Params truth;
  if (spec.map == GroundTruthMap::kLinear) {
    truth = BilinearParams{a};
  } else {
    Matrix v = b;
    v.Scale(1.0 / gamma);
    truth = Fc2Params{a, std::move(v), Activation::kTanh};
  }
  return SyntheticTask{std::move(train), std::move(val), std::move(test),
                       std::move(classes), std::move(seen), std::move(unseen),
                       std::move(folds), ProjectionModel(std::move(truth), spec.seed)};
}

}  // namespace zsl
