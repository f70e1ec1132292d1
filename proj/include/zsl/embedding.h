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

#ifndef ZSL_EMBEDDING_H_
#define ZSL_EMBEDDING_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zsl {

// A finite, non-empty real vector: an acoustic embedding theta(x) or a class
// semantic embedding phi(y).
class EmbeddingVector {
 public:
  // Throws DataError if values is empty or holds NaN/Inf.
  explicit EmbeddingVector(std::vector<double> values);

  size_t dim() const { return values_.size(); }
  double operator[](size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  bool operator==(const EmbeddingVector&) const = default;

 private:
  std::vector<double> values_;
};

struct LabeledInstance {
  std::string instance_id;
  EmbeddingVector acoustic;
  std::string class_id;
};

// Labelled acoustic embeddings {(x_n, y_n)}, in insertion order.
class LabeledDataset {
 public:
  explicit LabeledDataset(size_t acoustic_dim);

  // Throws DataError on a dimension mismatch or a repeated instance id.
  void Add(std::string instance_id, EmbeddingVector acoustic,
           std::string class_id);

  size_t acoustic_dim() const { return acoustic_dim_; }
  size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const LabeledInstance& operator[](size_t i) const { return items_[i]; }
  std::span<const LabeledInstance> items() const { return items_; }

  // Distinct labels, sorted.
  std::vector<std::string> ClassIds() const;

  // Rows selected by position, in the given order.
  LabeledDataset Select(std::span<const size_t> positions) const;

 private:
  size_t acoustic_dim_;
  std::vector<LabeledInstance> items_;
  std::map<std::string, size_t> index_;
};

// Class id -> semantic embedding. Entries are kept sorted by class id, so
// iteration order (and classifier tie-breaking) is lexicographic.
class ClassTable {
 public:
  explicit ClassTable(size_t semantic_dim);

  // Throws DataError on a dimension mismatch or a repeated class id.
  void Add(std::string class_id, EmbeddingVector semantic);

  size_t semantic_dim() const { return semantic_dim_; }
  size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  const std::string& id(size_t i) const { return ids_[i]; }
  const EmbeddingVector& vector(size_t i) const { return vectors_[i]; }
  std::span<const std::string> ids() const { return ids_; }

  std::optional<size_t> Find(const std::string& class_id) const;
  bool Contains(const std::string& class_id) const {
    return Find(class_id).has_value();
  }

  // Throws DataError if any id is absent.
  ClassTable Subset(std::span<const std::string> class_ids) const;

  bool operator==(const ClassTable& other) const {
    return semantic_dim_ == other.semantic_dim_ && ids_ == other.ids_ &&
           vectors_ == other.vectors_;
  }

 private:
  size_t semantic_dim_;
  std::vector<std::string> ids_;
  std::vector<EmbeddingVector> vectors_;
};

// Class id -> fold index in [0, k). Every class belongs to exactly one fold.
class FoldAssignment {
 public:
  explicit FoldAssignment(int num_folds);

  // Throws DataError on a repeated class id or a fold index outside [0, k).
  void Assign(const std::string& class_id, int fold);

  int num_folds() const { return num_folds_; }
  size_t size() const { return folds_.size(); }
  std::optional<int> FoldOf(const std::string& class_id) const;
  // Sorted class ids of one fold.
  std::vector<std::string> ClassesInFold(int fold) const;
  const std::map<std::string, int>& entries() const { return folds_; }

  bool operator==(const FoldAssignment&) const = default;

 private:
  int num_folds_;
  std::map<std::string, int> folds_;
};

// Elementwise arithmetic mean. Used both for clip-level acoustic embeddings
// (mean over segment embeddings) and for class embeddings (mean over the word
// vectors of a class's labels). Throws DataError on empty input or mixed
// dimensions.
EmbeddingVector AverageVectors(std::span<const EmbeddingVector> vectors);

// Builds a class table where each class embedding is the mean of the vectors
// of its label tokens. Tokens missing from token_vectors are skipped; a class
// left with no token vectors at all is a DataError.
ClassTable AverageTokenVectors(
    const std::map<std::string, std::vector<std::string>>& class_tokens,
    const std::map<std::string, EmbeddingVector>& token_vectors);

// Seeded random partition of class ids into k folds of contiguous chunks of a
// shuffled copy. Sizes differ by at most one; the surplus classes go to the
// highest-numbered folds (521 classes, k = 5 gives 104,104,104,104,105).
FoldAssignment SplitFolds(std::span<const std::string> class_ids, int k,
                          uint64_t seed);

}  // namespace zsl

#endif  // ZSL_EMBEDDING_H_
