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

#include "zsl/embedding_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "zsl/error.h"

namespace zsl {
namespace {

std::string Where(const std::string& source, size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

bool SkipLine(const std::string& line) {
  return line.empty() || line[0] == '#';
}

std::ifstream OpenInput(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return in;
}

// Reads lines, strips a trailing CR, and hands (line number, text) to fn for
// every non-comment line.
template <typename Fn>
void ForEachRecord(std::istream& in, Fn fn) {
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (SkipLine(line)) continue;
    fn(number, line);
  }
}

// Splits "<key>\t<rest>"; both halves must be non-empty.
std::pair<std::string, std::string> SplitKey(const std::string& line,
                                             const std::string& where) {
  auto tab = line.find('\t');
  if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
    throw DataError(where + "expected '<id>\\t<fields>'");
  }
  return {line.substr(0, tab), line.substr(tab + 1)};
}

std::vector<std::string> SplitWhitespace(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string token;
  while (ss >> token) out.push_back(token);
  return out;
}

double ParseReal(const std::string& token, const std::string& where) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw DataError(where + "not a finite number: '" + token + "'");
  }
  return value;
}

}  // namespace

std::string FormatReal(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

EmbeddingTable ParseEmbeddingTable(std::istream& in, const std::string& source,
                                   std::optional<size_t> expected_dim) {
  EmbeddingTable table;
  std::set<std::string> seen;
  ForEachRecord(in, [&](size_t number, const std::string& line) {
    const std::string where = Where(source, number);
    auto [id, rest] = SplitKey(line, where);
    auto tokens = SplitWhitespace(rest);
    if (tokens.empty()) throw DataError(where + "no values after id");
    const size_t want =
        table.rows.empty() ? expected_dim.value_or(tokens.size()) : table.dim;
    if (tokens.size() != want) {
      throw DataError(where + "dimension mismatch: got " +
                      std::to_string(tokens.size()) + " values, expected " +
                      std::to_string(want));
    }
    std::vector<double> values;
    values.reserve(tokens.size());
    for (const auto& t : tokens) values.push_back(ParseReal(t, where));
    if (!seen.insert(id).second) {
      throw DataError(where + "duplicate id '" + id + "'");
    }
    table.dim = want;
    table.rows.emplace_back(id, EmbeddingVector(std::move(values)));
  });
  if (table.rows.empty()) {
    throw DataError(source + ": empty input (no embedding lines)");
  }
  return table;
}

EmbeddingTable ParseEmbeddingFile(const std::filesystem::path& path,
                                  std::optional<size_t> expected_dim) {
  auto in = OpenInput(path);
  return ParseEmbeddingTable(in, path.string(), expected_dim);
}

void WriteEmbeddingTable(std::ostream& out, const EmbeddingTable& table) {
  for (const auto& [id, vec] : table.rows) {
    out << id << '\t';
    for (size_t i = 0; i < vec.dim(); ++i) {
      if (i) out << ' ';
      out << FormatReal(vec[i]);
    }
    out << '\n';
  }
}

std::vector<ManifestEntry> ParseManifest(std::istream& in,
                                         const std::string& source) {
  std::vector<ManifestEntry> entries;
  std::set<std::string> seen;
  ForEachRecord(in, [&](size_t number, const std::string& line) {
    const std::string where = Where(source, number);
    auto [id, rest] = SplitKey(line, where);
    auto tokens = SplitWhitespace(rest);
    if (tokens.size() != 1) {
      throw DataError(where + "expected '<instance_id>\\t<class_id>'");
    }
    if (!seen.insert(id).second) {
      throw DataError(where + "duplicate instance id '" + id + "'");
    }
    entries.push_back({id, tokens[0]});
  });
  if (entries.empty()) throw DataError(source + ": empty manifest");
  return entries;
}

std::vector<ManifestEntry> ParseManifestFile(const std::filesystem::path& path) {
  auto in = OpenInput(path);
  return ParseManifest(in, path.string());
}

void WriteManifest(std::ostream& out,
                   const std::vector<ManifestEntry>& entries) {
  for (const auto& e : entries) out << e.instance_id << '\t' << e.class_id << '\n';
}

FoldAssignment ParseFoldAssignment(std::istream& in, const std::string& source) {
  std::vector<std::pair<std::string, int>> rows;
  std::set<std::string> seen;
  int max_fold = -1;
  ForEachRecord(in, [&](size_t number, const std::string& line) {
    const std::string where = Where(source, number);
    auto [id, rest] = SplitKey(line, where);
    auto tokens = SplitWhitespace(rest);
    if (tokens.size() != 1) {
      throw DataError(where + "expected '<class_id>\\t<fold_index>'");
    }
    int fold = -1;
    const auto& t = tokens[0];
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), fold);
    if (ec != std::errc() || ptr != t.data() + t.size() || fold < 0) {
      throw DataError(where + "invalid fold index '" + t + "'");
    }
    if (!seen.insert(id).second) {
      throw DataError(where + "class '" + id + "' listed twice");
    }
    max_fold = std::max(max_fold, fold);
    rows.emplace_back(id, fold);
  });
  if (rows.empty()) throw DataError(source + ": empty fold file");
  FoldAssignment folds(max_fold + 1);
  for (const auto& [id, fold] : rows) folds.Assign(id, fold);
  return folds;
}

FoldAssignment ParseFoldFile(const std::filesystem::path& path) {
  auto in = OpenInput(path);
  return ParseFoldAssignment(in, path.string());
}

void WriteFoldAssignment(std::ostream& out, const FoldAssignment& folds) {
  for (const auto& [id, fold] : folds.entries()) out << id << '\t' << fold << '\n';
}

ClassTable ToClassTable(const EmbeddingTable& table) {
  ClassTable classes(table.dim);
  for (const auto& [id, vec] : table.rows) classes.Add(id, vec);
  return classes;
}

EmbeddingTable ToEmbeddingTable(const ClassTable& table) {
  EmbeddingTable out;
  out.dim = table.semantic_dim();
  for (size_t i = 0; i < table.size(); ++i) {
    out.rows.emplace_back(table.id(i), table.vector(i));
  }
  return out;
}

LabeledDataset BuildDataset(const EmbeddingTable& acoustic,
                            const std::vector<ManifestEntry>& manifest) {
  std::map<std::string, const EmbeddingVector*> lookup;
  for (const auto& [id, vec] : acoustic.rows) lookup.emplace(id, &vec);
  LabeledDataset dataset(acoustic.dim);
  for (const auto& e : manifest) {
    auto it = lookup.find(e.instance_id);
    if (it == lookup.end()) {
      throw DataError("instance '" + e.instance_id +
                      "' has no acoustic embedding");
    }
    dataset.Add(e.instance_id, *it->second, e.class_id);
  }
  return dataset;
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

}  // namespace zsl
