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

#include "zsl/embedding.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "zsl/error.h"
#include "zsl/rng.h"

namespace zsl {

EmbeddingVector::EmbeddingVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) throw DataError("embedding vector must be non-empty");
  for (size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DataError("embedding vector has a non-finite entry at index " +
                      std::to_string(i));
    }
  }
}

LabeledDataset::LabeledDataset(size_t acoustic_dim)
    : acoustic_dim_(acoustic_dim) {
  if (acoustic_dim == 0) throw DataError("acoustic dimension must be >= 1");
}

void LabeledDataset::Add(std::string instance_id, EmbeddingVector acoustic,
                         std::string class_id) {
  if (acoustic.dim() != acoustic_dim_) {
    throw DataError("instance '" + instance_id + "' has dimension " +
                    std::to_string(acoustic.dim()) + ", expected " +
                    std::to_string(acoustic_dim_));
  }
  if (index_.count(instance_id)) {
    throw DataError("duplicate instance id '" + instance_id + "'");
  }
  index_.emplace(instance_id, items_.size());
  items_.push_back(
      {std::move(instance_id), std::move(acoustic), std::move(class_id)});
}

std::vector<std::string> LabeledDataset::ClassIds() const {
  std::set<std::string> ids;
  for (const auto& item : items_) ids.insert(item.class_id);
  return {ids.begin(), ids.end()};
}

LabeledDataset LabeledDataset::Select(std::span<const size_t> positions) const {
  LabeledDataset out(acoustic_dim_);
  for (size_t p : positions) {
    const auto& item = items_.at(p);
    out.Add(item.instance_id, item.acoustic, item.class_id);
  }
  return out;
}

ClassTable::ClassTable(size_t semantic_dim) : semantic_dim_(semantic_dim) {
  if (semantic_dim == 0) throw DataError("semantic dimension must be >= 1");
}

void ClassTable::Add(std::string class_id, EmbeddingVector semantic) {
  if (semantic.dim() != semantic_dim_) {
    throw DataError("class '" + class_id + "' has dimension " +
                    std::to_string(semantic.dim()) + ", expected " +
                    std::to_string(semantic_dim_));
  }
  auto it = std::lower_bound(ids_.begin(), ids_.end(), class_id);
  if (it != ids_.end() && *it == class_id) {
    throw DataError("duplicate class id '" + class_id + "'");
  }
  auto pos = it - ids_.begin();
  ids_.insert(it, std::move(class_id));
  vectors_.insert(vectors_.begin() + pos, std::move(semantic));
}

std::optional<size_t> ClassTable::Find(const std::string& class_id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), class_id);
  if (it == ids_.end() || *it != class_id) return std::nullopt;
  return static_cast<size_t>(it - ids_.begin());
}

ClassTable ClassTable::Subset(std::span<const std::string> class_ids) const {
  ClassTable out(semantic_dim_);
  for (const auto& id : class_ids) {
    auto i = Find(id);
    if (!i) throw DataError("unknown class id '" + id + "'");
    out.Add(id, vectors_[*i]);
  }
  return out;
}

FoldAssignment::FoldAssignment(int num_folds) : num_folds_(num_folds) {
  if (num_folds < 1) throw DataError("number of folds must be >= 1");
}

void FoldAssignment::Assign(const std::string& class_id, int fold) {
  if (fold < 0 || fold >= num_folds_) {
    throw DataError("fold index " + std::to_string(fold) + " for class '" +
                    class_id + "' outside [0, " + std::to_string(num_folds_) +
                    ")");
  }
  if (!folds_.emplace(class_id, fold).second) {
    throw DataError("class '" + class_id + "' assigned to more than one fold");
  }
}

std::optional<int> FoldAssignment::FoldOf(const std::string& class_id) const {
  auto it = folds_.find(class_id);
  if (it == folds_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> FoldAssignment::ClassesInFold(int fold) const {
  std::vector<std::string> out;
  for (const auto& [id, f] : folds_) {
    if (f == fold) out.push_back(id);
  }
  return out;
}

EmbeddingVector AverageVectors(std::span<const EmbeddingVector> vectors) {
  if (vectors.empty()) throw DataError("cannot average an empty sequence");
  const size_t dim = vectors.front().dim();
  // Running mean: exact on constant sequences and free of overflow.
  std::vector<double> mean(dim, 0.0);
  size_t count = 0;
  for (const auto& v : vectors) {
    if (v.dim() != dim) {
      throw DataError("cannot average vectors of dimensions " +
                      std::to_string(dim) + " and " + std::to_string(v.dim()));
    }
    ++count;
    const double k = static_cast<double>(count);
    for (size_t i = 0; i < dim; ++i) mean[i] += (v[i] - mean[i]) / k;
  }
  return EmbeddingVector(std::move(mean));
}

ClassTable AverageTokenVectors(
    const std::map<std::string, std::vector<std::string>>& class_tokens,
    const std::map<std::string, EmbeddingVector>& token_vectors) {
  if (token_vectors.empty()) throw DataError("no token vectors provided");
  ClassTable table(token_vectors.begin()->second.dim());
  for (const auto& [class_id, tokens] : class_tokens) {
    std::vector<EmbeddingVector> found;
    for (const auto& token : tokens) {
      auto it = token_vectors.find(token);
      if (it != token_vectors.end()) found.push_back(it->second);
    }
    if (found.empty()) {
      throw DataError("class '" + class_id +
                      "' has no label token with an available vector");
    }
    table.Add(class_id, AverageVectors(found));
  }
  return table;
}

FoldAssignment SplitFolds(std::span<const std::string> class_ids, int k,
                          uint64_t seed) {
  if (k <= 0) throw ConfigError("number of folds must be positive");
  if (static_cast<size_t>(k) > class_ids.size()) {
    throw ConfigError("cannot split " + std::to_string(class_ids.size()) +
                      " classes into " + std::to_string(k) + " folds");
  }
  std::vector<std::string> order(class_ids.begin(), class_ids.end());
  Rng rng(seed);
  rng.Shuffle(std::span<std::string>(order));

  const size_t n = order.size();
  const size_t base = n / k;
  const size_t surplus = n % k;
  FoldAssignment folds(k);
  size_t pos = 0;
  for (int f = 0; f < k; ++f) {
    size_t count = base + (static_cast<size_t>(f) >= k - surplus ? 1 : 0);
    for (size_t c = 0; c < count; ++c) folds.Assign(order[pos++], f);
  }
  return folds;
}

}  // namespace zsl
