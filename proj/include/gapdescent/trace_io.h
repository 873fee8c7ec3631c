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

#ifndef GAPDESCENT_TRACE_IO_H_
#define GAPDESCENT_TRACE_IO_H_

#include <ostream>
#include <string>

#include "absl/status/status.h"
#include "gapdescent/descent.h"
#include "gapdescent/game.h"

namespace gapdescent {

// Column order of trace CSV files.
inline constexpr char kTraceCsvHeader[] =
    "t,epoch,delta_i,rho_i,epsilon,V_before,V_after,gamma,row_set,col_set";

// Describes the run a trace came from. Only `wall_seconds` in the JSON
// form varies between identical runs.
struct TraceMetadata {
  std::string solver;  // e.g. "fixed_support" or "ogda"
  std::string game;    // e.g. "uniform 100x100 seed 7"
  std::string generator;
  double delta = 0.0;
};

// One row per iteration, reals in "%.17g", NaN written as "nan".
void WriteTraceCsv(const SolveTrace& trace, std::ostream& out);

// {"metadata": {...}, "outcome": ..., "stalled": ..., "iteration_cap": ...,
//  "initial_gap": ..., "iterations": [{"t": ..., ...}, ...]} with NaN
// written as null.
void WriteTraceJson(const SolveTrace& trace, const TraceMetadata& metadata,
                    std::ostream& out);

// {"row": [...], "col": [...], "duality_gap": ...}; readable by
// ReadProfileJson.
void WriteProfileJson(const PayoffMatrix& payoffs,
                      const StrategyProfile& profile, std::ostream& out);

// File variants. DataLossError when the file cannot be written.
absl::Status WriteTraceFile(const SolveTrace& trace,
                            const TraceMetadata& metadata,
                            const std::string& path);
absl::Status WriteProfileFile(const PayoffMatrix& payoffs,
                              const StrategyProfile& profile,
                              const std::string& path);

}  // namespace gapdescent

#endif  // GAPDESCENT_TRACE_IO_H_
