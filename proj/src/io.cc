// Copyright 2026 The gapdescent Authors.
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

#include "gapdescent/io.h"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <vector>

#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "json.hpp"

namespace gapdescent {
namespace {

using json = nlohmann::json;

absl::StatusOr<double> ParseCell(absl::string_view cell, int line) {
  const std::string text(absl::StripAsciiWhitespace(cell));
  if (text.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("empty cell on line ", line));
  }
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot parse '", text, "' on line ", line));
  }
  return value;
}

absl::StatusOr<Eigen::MatrixXd> FromRows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    return absl::InvalidArgumentError("matrix is empty");
  }
  const size_t cols = rows.front().size();
  Eigen::MatrixXd matrix(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      return absl::InvalidArgumentError(
          absl::StrCat("ragged matrix: row ", i, " has ", rows[i].size(),
                       " entries, row 0 has ", cols));
    }
    for (size_t j = 0; j < cols; ++j) matrix(i, j) = rows[i][j];
  }
  return matrix;
}

absl::StatusOr<std::vector<double>> ProbabilityArray(const json& node,
                                                     const char* key) {
  if (!node.contains(key) || !node[key].is_array()) {
    return absl::InvalidArgumentError(
        absl::StrCat("profile is missing array '", key, "'"));
  }
  std::vector<double> values;
  for (const json& v : node[key]) {
    if (!v.is_number()) {
      return absl::InvalidArgumentError(
          absl::StrCat("non-numeric entry in '", key, "'"));
    }
    values.push_back(v.get<double>());
  }
  return values;
}

}  // namespace

MatrixFormat FormatFromPath(const std::string& path) {
  return absl::EndsWithIgnoreCase(path, ".json") ? MatrixFormat::kJson
                                                 : MatrixFormat::kCsv;
}

absl::StatusOr<Eigen::MatrixXd> ReadMatrixCsv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (absl::StripAsciiWhitespace(line).empty()) continue;
    std::vector<double> row;
    for (absl::string_view cell : absl::StrSplit(line, ',')) {
      absl::StatusOr<double> value = ParseCell(cell, line_number);
      if (!value.ok()) return value.status();
      row.push_back(*value);
    }
    rows.push_back(std::move(row));
  }
  return FromRows(rows);
}

absl::StatusOr<Eigen::MatrixXd> ReadMatrixJson(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed matrix JSON: ", e.what()));
  }
  if (!doc.is_object() || !doc.contains("entries") ||
      !doc["entries"].is_array()) {
    return absl::InvalidArgumentError("matrix JSON needs an 'entries' array");
  }
  std::vector<std::vector<double>> rows;
  for (const json& row : doc["entries"]) {
    if (!row.is_array()) {
      return absl::InvalidArgumentError("matrix rows must be arrays");
    }
    std::vector<double> values;
    for (const json& v : row) {
      if (!v.is_number()) {
        return absl::InvalidArgumentError("matrix entries must be numbers");
      }
      values.push_back(v.get<double>());
    }
    rows.push_back(std::move(values));
  }
  absl::StatusOr<Eigen::MatrixXd> matrix = FromRows(rows);
  if (!matrix.ok()) return matrix;
  if (doc.contains("m") && doc["m"] != json(matrix->rows())) {
    return absl::InvalidArgumentError("'m' does not match the entries");
  }
  if (doc.contains("n") && doc["n"] != json(matrix->cols())) {
    return absl::InvalidArgumentError("'n' does not match the entries");
  }
  return matrix;
}

absl::StatusOr<Eigen::MatrixXd> ReadMatrixFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  return FormatFromPath(path) == MatrixFormat::kJson ? ReadMatrixJson(in)
                                                     : ReadMatrixCsv(in);
}

void WriteMatrixCsv(const Eigen::MatrixXd& matrix, std::ostream& out) {
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (j > 0) out << ',';
      out << FormatDouble(matrix(i, j));
    }
    out << '\n';
  }
}

void WriteMatrixJson(const Eigen::MatrixXd& matrix, std::ostream& out) {
  out << "{\"m\":" << matrix.rows() << ",\"n\":" << matrix.cols()
      << ",\"entries\":[";
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    if (i > 0) out << ',';
    out << '[';
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (j > 0) out << ',';
      out << FormatDouble(matrix(i, j));
    }
    out << ']';
  }
  out << "]}\n";
}

absl::Status WriteMatrixFile(const Eigen::MatrixXd& matrix,
                             const std::string& path) {
  std::ofstream out(path);
  if (!out) return absl::DataLossError(absl::StrCat("cannot write ", path));
  if (FormatFromPath(path) == MatrixFormat::kJson) {
    WriteMatrixJson(matrix, out);
  } else {
    WriteMatrixCsv(matrix, out);
  }
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("cannot write ", path));
  return absl::OkStatus();
}

absl::StatusOr<StrategyProfile> ReadProfileJson(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed profile JSON: ", e.what()));
  }
  if (!doc.is_object()) {
    return absl::InvalidArgumentError("profile JSON must be an object");
  }
  absl::StatusOr<std::vector<double>> row = ProbabilityArray(doc, "row");
  if (!row.ok()) return row.status();
  absl::StatusOr<std::vector<double>> col = ProbabilityArray(doc, "col");
  if (!col.ok()) return col.status();
  absl::StatusOr<MixedStrategy> x = MixedStrategy::Create(
      Eigen::Map<const Eigen::VectorXd>(row->data(), row->size()));
  if (!x.ok()) return x.status();
  absl::StatusOr<MixedStrategy> y = MixedStrategy::Create(
      Eigen::Map<const Eigen::VectorXd>(col->data(), col->size()));
  if (!y.ok()) return y.status();
  return StrategyProfile{*std::move(x), *std::move(y)};
}

absl::StatusOr<StrategyProfile> ReadProfileFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  return ReadProfileJson(in);
}

std::string FormatDouble(double value) {
  return absl::StrFormat("%.17g", value);
}

}  // namespace gapdescent
