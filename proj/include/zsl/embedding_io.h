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

#ifndef ZSL_EMBEDDING_IO_H_
#define ZSL_EMBEDDING_IO_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zsl/embedding.h"

namespace zsl {

// Text formats (UTF-8, one record per line, '#' lines ignored):
//   embedding table  <id>\t<v1> <v2> ... <vd>
//   manifest         <instance_id>\t<class_id>
//   fold file        <class_id>\t<fold_index>
// Reals are written in the shortest form that parses back to the same
// double, so write -> parse is value-exact.

struct EmbeddingTable {
  size_t dim = 0;
  std::vector<std::pair<std::string, EmbeddingVector>> rows;  // file order
};

struct ManifestEntry {
  std::string instance_id;
  std::string class_id;
};

// Shortest round-trip decimal form of a finite double.
std::string FormatReal(double value);

// Errors are DataError with "<source>:<line>: " prefixes.
EmbeddingTable ParseEmbeddingTable(std::istream& in, const std::string& source,
                                   std::optional<size_t> expected_dim = {});
EmbeddingTable ParseEmbeddingFile(const std::filesystem::path& path,
                                  std::optional<size_t> expected_dim = {});
void WriteEmbeddingTable(std::ostream& out, const EmbeddingTable& table);

std::vector<ManifestEntry> ParseManifest(std::istream& in,
                                         const std::string& source);
std::vector<ManifestEntry> ParseManifestFile(const std::filesystem::path& path);
void WriteManifest(std::ostream& out, const std::vector<ManifestEntry>& entries);

// The number of folds is one past the largest index seen.
FoldAssignment ParseFoldAssignment(std::istream& in, const std::string& source);
FoldAssignment ParseFoldFile(const std::filesystem::path& path);
void WriteFoldAssignment(std::ostream& out, const FoldAssignment& folds);

ClassTable ToClassTable(const EmbeddingTable& table);
EmbeddingTable ToEmbeddingTable(const ClassTable& table);

// Joins a manifest with an acoustic embedding table. Every manifest instance
// must have an embedding; unreferenced embeddings are ignored.
LabeledDataset BuildDataset(const EmbeddingTable& acoustic,
                            const std::vector<ManifestEntry>& manifest);

// Truncates and writes a text file,
// throwing DataError when the file cannot be opened.
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace zsl

#endif  // ZSL_EMBEDDING_IO_H_
