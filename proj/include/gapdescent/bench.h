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

#ifndef GAPDESCENT_BENCH_H_
#define GAPDESCENT_BENCH_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "gapdescent/descent.h"
#include "gapdescent/game.h"
#include "gapdescent/generators.h"
#include "gapdescent/ogda.h"

namespace gapdescent {

// Verdict of the `verify` command.
struct Verification {
  double duality_gap = 0.0;
  double row_regret = 0.0;
  double col_regret = 0.0;
  bool is_delta_nash = false;
};

absl::StatusOr<Verification> VerifyProfile(const PayoffMatrix& payoffs,
                                           const StrategyProfile& profile,
                                           double delta);

enum class SolverKind { kDescent, kOgda };

struct SolverSpec {
  std::string name;  // summary label and trace file stem
  SolverKind kind = SolverKind::kDescent;
  SolveConfig descent;  // kDescent
  OgdaConfig ogda;      // kOgda
};

double SolverDelta(const SolverSpec& solver);

enum class TraceVerbosity { kSummary, kFull };

// Repetition r of a game spec uses seed spec.seed + r.
struct BenchConfig {
  std::vector<GameSpec> games;
  std::vector<SolverSpec> solvers;
  int repetitions = 1;
  std::string output_dir;  // empty: nothing is written
  TraceVerbosity verbosity = TraceVerbosity::kFull;
  int threads = 0;  // 0: hardware concurrency
};

absl::Status ValidateBenchConfig(const BenchConfig& config);

// JSON form:
//   {"games": [{"family": "uniform", "rows": 100, "cols": 100, "seed": 1,
//               "rank": 10}],
//    "solvers": [{"name": "fs", "type": "descent",
//                 "variant": "fixed_support", "k": 100, "delta": 0.01,
//                 "rho": 0.1, "epsilon": "ternary_decay", "init": "pure",
//                 "lp_tolerance": 1e-8, "max_iterations": 0,
//                 "rho_scale": 1.0, "decomposed": true,
//                 "reject_increases": true},
//                {"name": "ogda", "type": "ogda", "alpha": 0.01,
//                 "delta": 0.01, "sqrt_decay": false,
//                 "max_iterations": 100000, "init": "uniform"}],
//    "repetitions": 30, "output_dir": "out", "verbosity": "full",
//    "threads": 0}
// Every key except "games" and "solvers" is optional. Unknown keys are
// rejected.
absl::StatusOr<BenchConfig> ParseBenchConfig(std::istream& in);
// One entry of the "solvers" array on its own.
absl::StatusOr<SolverSpec> ParseSolverSpec(std::istream& in);
absl::StatusOr<BenchConfig> ReadBenchConfigFile(const std::string& path);

struct CellResult {
  int game_index = 0;
  int solver_index = 0;
  int repetition = 0;
  GameSpec game;  // seed already offset by the repetition
  Outcome outcome = Outcome::kIterationCapReached;
  bool stalled = false;
  int64_t iterations = 0;
  double final_gap = 0.0;
  double wall_seconds = 0.0;
  bool verified = false;  // VerifyProfile at the solver's delta
  std::string trace_path;
  absl::Status status;  // solver or I/O failure of this cell
};

struct SummaryRow {
  std::string family;
  std::string size;  // "m x n" written as "mxn"
  std::string variant;
  int repetitions = 0;
  double mean_iterations = 0.0;
  double median_iterations = 0.0;
  double convergence_rate = 0.0;
  double mean_final_gap = 0.0;
};

inline constexpr char kSummaryCsvHeader[] =
    "family,size,variant,repetitions,mean_iterations,median_iterations,"
    "convergence_rate,mean_final_gap";

struct BenchResult {
  std::vector<CellResult> cells;  // config order: game, solver, repetition
  std::vector<SummaryRow> summary;
  double wall_seconds = 0.0;
  int failed_cells = 0;
};

// Runs every (game, solver, repetition) cell on a worker pool. With an
// output directory it writes one trace CSV per cell (kFull), summary.csv
// and manifest.json. Failing cells are recorded and do not stop the rest;
// only an invalid config or an unusable output directory is an error.
absl::StatusOr<BenchResult> RunBench(const BenchConfig& config);

// Summary rows aggregate the cells of one (game, solver) pair. Cells with
// a failure status count as not converged and are left out of the means.
std::vector<SummaryRow> Summarize(const BenchConfig& config,
                                  const std::vector<CellResult>& cells);

void WriteSummaryCsv(const std::vector<SummaryRow>& rows, std::ostream& out);

}  // namespace gapdescent

#endif  // GAPDESCENT_BENCH_H_
