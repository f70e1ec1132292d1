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

#include "zsl/checkpoint.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "zsl/embedding_io.h"
#include "zsl/error.h"

namespace zsl {
namespace {

constexpr const char* kMagic = "zsl-checkpoint";
constexpr int kVersion = 1;

class LineReader {
 public:
  LineReader(std::istream& in, std::string source)
      : in_(in), source_(std::move(source)) {}

  std::istringstream Next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      return std::istringstream(line);
    }
    Fail("unexpected end of checkpoint");
  }

  // Reads "<key> <value>" and returns value.
  std::string Field(const std::string& key) {
    auto ss = Next();
    std::string k, v, extra;
    if (!(ss >> k >> v) || k != key || (ss >> extra)) {
      Fail("expected '" + key + " <value>'");
    }
    return v;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw DataError(source_ + ":" + std::to_string(number_) + ": " + message);
  }

 private:
  std::istream& in_;
  std::string source_;
  size_t number_ = 0;
};

template <typename T>
T ParseInteger(const std::string& s, const LineReader& reader) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    reader.Fail("invalid integer '" + s + "'");
  }
  return value;
}

Matrix ReadMatrix(LineReader& reader, const std::string& name, size_t rows,
                  size_t cols) {
  auto header = reader.Next();
  std::string tag, got_name;
  size_t got_rows = 0, got_cols = 0;
  if (!(header >> tag >> got_name >> got_rows >> got_cols) || tag != "matrix") {
    reader.Fail("expected 'matrix <name> <rows> <cols>'");
  }
  if (got_name != name || got_rows != rows || got_cols != cols) {
    reader.Fail("expected matrix " + name + " " + std::to_string(rows) + " " +
                std::to_string(cols));
  }
  Matrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    auto line = reader.Next();
    std::string token;
    for (size_t j = 0; j < cols; ++j) {
      if (!(line >> token)) reader.Fail("short matrix row");
      double v = 0.0;
      auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || ptr != token.data() + token.size() ||
          !std::isfinite(v)) {
        reader.Fail("invalid matrix entry '" + token + "'");
      }
      m(i, j) = v;
    }
    if (line >> token) reader.Fail("long matrix row");
  }
  return m;
}

}  // namespace

void WriteCheckpoint(std::ostream& out, const ProjectionModel& model) {
  out << kMagic << ' ' << kVersion << '\n'
      << "kind " << ToString(model.kind()) << '\n'
      << "activation " << ToString(model.activation()) << '\n'
      << "acoustic_dim " << model.acoustic_dim() << '\n'
      << "semantic_dim " << model.semantic_dim() << '\n'
      << "rank " << model.rank() << '\n'
      << "seed " << model.seed() << '\n';
  const auto names = model.matrix_names();
  const auto mats = model.matrices();
  for (size_t k = 0; k < mats.size(); ++k) {
    const Matrix& m = *mats[k];
    out << "matrix " << names[k] << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (size_t i = 0; i < m.rows(); ++i) {
      for (size_t j = 0; j < m.cols(); ++j) {
        if (j) out << ' ';
        out << FormatReal(m(i, j));
      }
      out << '\n';
    }
  }
}

std::string CheckpointToString(const ProjectionModel& model) {
  std::ostringstream out;
  WriteCheckpoint(out, model);
  return out.str();
}

void SaveCheckpoint(const std::filesystem::path& path,
                    const ProjectionModel& model) {
  WriteTextFile(path, CheckpointToString(model));
}

ProjectionModel ReadCheckpoint(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  {
    auto magic = reader.Next();
    std::string tag;
    int version = 0;
    if (!(magic >> tag >> version) || tag != kMagic) {
      reader.Fail("not a checkpoint");
    }
    if (version != kVersion) {
      reader.Fail("unsupported checkpoint version " + std::to_string(version));
    }
  }
  ModelKind kind;
  Activation activation;
  try {
    kind = ParseModelKind(reader.Field("kind"));
    activation = ParseActivation(reader.Field("activation"));
  } catch (const ConfigError& e) {
    reader.Fail(e.what());
  }
  const auto d_a = ParseInteger<size_t>(reader.Field("acoustic_dim"), reader);
  const auto d_s = ParseInteger<size_t>(reader.Field("semantic_dim"), reader);
  const auto r = ParseInteger<size_t>(reader.Field("rank"), reader);
  const auto seed = ParseInteger<uint64_t>(reader.Field("seed"), reader);
  if (d_a == 0 || d_s == 0 || r == 0) reader.Fail("dimensions must be positive");

  ProjectionModel::Params params;
  switch (kind) {
    case ModelKind::kBilinear:
      params = BilinearParams{ReadMatrix(reader, "W", d_a, d_s)};
      break;
    case ModelKind::kFactoredLinear: {
      Matrix u = ReadMatrix(reader, "U", d_a, r);
      params = FactoredLinearParams{std::move(u), ReadMatrix(reader, "V", r, d_s)};
      break;
    }
    case ModelKind::kFc2: {
      Matrix u = ReadMatrix(reader, "U", d_a, r);
      params = Fc2Params{std::move(u), ReadMatrix(reader, "V", r, d_s),
                         activation};
      break;
    }
    case ModelKind::kFc3: {
      Matrix u = ReadMatrix(reader, "U", d_a, r);
      Matrix q = ReadMatrix(reader, "Q", r, r);
      params = Fc3Params{std::move(u), std::move(q),
                         ReadMatrix(reader, "V", r, d_s), activation};
      break;
    }
  }
  try {
    return ProjectionModel(std::move(params), seed);
  } catch (const ConfigError& e) {
    reader.Fail(e.what());
  }
}

ProjectionModel LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return ReadCheckpoint(in, path.string());
}

}  // namespace zsl
