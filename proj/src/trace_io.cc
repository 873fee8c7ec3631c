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

#include "gapdescent/trace_io.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <vector>

#include "absl/strings/str_cat.h"
#include "gapdescent/io.h"
#include "json.hpp"

namespace gapdescent {
namespace {

using json = nlohmann::ordered_json;

std::string CsvReal(double value) {
  return std::isnan(value) ? "nan" : FormatDouble(value);
}

json JsonReal(double value) {
  return std::isfinite(value) ? json(value) : json(nullptr);
}

json JsonVector(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

absl::Status WriteFile(const std::string& path,
                       const std::function<void(std::ostream&)>& write) {
  std::ofstream out(path);
  if (!out) return absl::DataLossError(absl::StrCat("cannot write ", path));
  write(out);
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("cannot write ", path));
  return absl::OkStatus();
}

}  // namespace

void WriteTraceCsv(const SolveTrace& trace, std::ostream& out) {
  out << kTraceCsvHeader << '\n';
  for (const IterationRecord& r : trace.iterations) {
    out << r.t << ',' << r.epoch << ',' << CsvReal(r.delta_i) << ','
        << CsvReal(r.rho_i) << ',' << CsvReal(r.epsilon) << ','
        << CsvReal(r.v_before) << ',' << CsvReal(r.v_after) << ','
        << CsvReal(r.gamma) << ',' << r.row_set << ',' << r.col_set << '\n';
  }
}

void WriteTraceJson(const SolveTrace& trace, const TraceMetadata& metadata,
                    std::ostream& out) {
  json doc;
  doc["metadata"] = {{"solver", metadata.solver},
                     {"game", metadata.game},
                     {"generator", metadata.generator},
                     {"delta", JsonReal(metadata.delta)},
                     {"wall_seconds", JsonReal(trace.wall_seconds)}};
  doc["outcome"] = OutcomeName(trace.outcome);
  doc["stalled"] = trace.stalled;
  doc["iteration_cap"] = trace.iteration_cap;
  doc["initial_gap"] = JsonReal(trace.initial_gap);
  json iterations = json::array();
  for (const IterationRecord& r : trace.iterations) {
    iterations.push_back({{"t", r.t},
                          {"epoch", r.epoch},
                          {"delta_i", JsonReal(r.delta_i)},
                          {"rho_i", JsonReal(r.rho_i)},
                          {"epsilon", JsonReal(r.epsilon)},
                          {"V_before", JsonReal(r.v_before)},
                          {"V_after", JsonReal(r.v_after)},
                          {"gamma", JsonReal(r.gamma)},
                          {"row_set", r.row_set},
                          {"col_set", r.col_set}});
  }
  doc["iterations"] = std::move(iterations);
  out << doc.dump(1) << '\n';
}

void WriteProfileJson(const PayoffMatrix& payoffs,
                      const StrategyProfile& profile, std::ostream& out) {
  json doc;
  doc["row"] = JsonVector(profile.row.probs());
  doc["col"] = JsonVector(profile.col.probs());
  doc["duality_gap"] = JsonReal(Evaluate(payoffs, profile).duality_gap());
  out << doc.dump(1) << '\n';
}

absl::Status WriteTraceFile(const SolveTrace& trace,
                            const TraceMetadata& metadata,
                            const std::string& path) {
  if (FormatFromPath(path) == MatrixFormat::kJson) {
    return WriteFile(
        path, [&](std::ostream& out) { WriteTraceJson(trace, metadata, out); });
  }
  return WriteFile(path, [&](std::ostream& out) { WriteTraceCsv(trace, out); });
}

absl::Status WriteProfileFile(const PayoffMatrix& payoffs,
                              const StrategyProfile& profile,
                              const std::string& path) {
  return WriteFile(path, [&](std::ostream& out) {
    WriteProfileJson(payoffs, profile, out);
  });
}

}  // namespace gapdescent
