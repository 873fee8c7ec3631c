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

#ifndef GAPDESCENT_IO_H_
#define GAPDESCENT_IO_H_

#include <istream>
#include <ostream>
#include <string>

#include "Eigen/Core"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "gapdescent/game.h"

namespace gapdescent {

// Matrix files come in two forms:
//   CSV:  dense, row-major, one matrix row per line, comma separated.
//   JSON: {"m": <rows>, "n": <cols>, "entries": [[...], ...]}.
// Both readers reject ragged rows and non-numeric cells with
// InvalidArgumentError. File-level failures map to NotFoundError (cannot
// open) or DataLossError (cannot write).

enum class MatrixFormat { kCsv, kJson };

// ".json" selects JSON, everything else CSV.
MatrixFormat FormatFromPath(const std::string& path);

absl::StatusOr<Eigen::MatrixXd> ReadMatrixCsv(std::istream& in);
absl::StatusOr<Eigen::MatrixXd> ReadMatrixJson(std::istream& in);
absl::StatusOr<Eigen::MatrixXd> ReadMatrixFile(const std::string& path);

void WriteMatrixCsv(const Eigen::MatrixXd& matrix, std::ostream& out);
void WriteMatrixJson(const Eigen::MatrixXd& matrix, std::ostream& out);
absl::Status WriteMatrixFile(const Eigen::MatrixXd& matrix,
                             const std::string& path);

// Profiles are stored as {"row": [...], "col": [...]}; extra keys are
// ignored so solver output files can be read back directly.
absl::StatusOr<StrategyProfile> ReadProfileJson(std::istream& in);
absl::StatusOr<StrategyProfile> ReadProfileFile(const std::string& path);

// Round-trip decimal form ("%.17g").
std::string FormatDouble(double value);

}  // namespace gapdescent

#endif  // GAPDESCENT_IO_H_
