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

#include "gapdescent/bench.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <thread>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "gapdescent/io.h"
#include "gapdescent/trace_io.h"
#include "json.hpp"

namespace gapdescent {
namespace {

using json = nlohmann::ordered_json;

absl::Status CheckKeys(const json& object, const std::set<std::string>& keys,
                       const std::string& where) {
  if (!object.is_object()) {
    return absl::InvalidArgumentError(
        absl::StrCat(where, " must be a JSON object"));
  }
  for (const auto& item : object.items()) {
    if (!keys.contains(item.key())) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown key '", item.key(), "' in ", where));
    }
  }
  return absl::OkStatus();
}

// Reads object[key] into *out when present.
template <typename T>
absl::Status Optional(const json& object, const std::string& key, T* out,
                      const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) return absl::OkStatus();
  try {
    *out = it->get<T>();
  } catch (const json::exception&) {
    return absl::InvalidArgumentError(
        absl::StrCat("bad value for '", key, "' in ", where));
  }
  return absl::OkStatus();
}

#define GAPDESCENT_RETURN_IF_ERROR(expr)                \
  do {                                                  \
    if (absl::Status status_ = (expr); !status_.ok()) { \
      return status_;                                   \
    }                                                   \
  } while (0)

absl::StatusOr<GameSpec> ParseGame(const json& object,
                                   const std::string& where) {
  GAPDESCENT_RETURN_IF_ERROR(
      CheckKeys(object, {"family", "rows", "cols", "seed", "rank"}, where));
  GameSpec spec;
  std::string family = "uniform";
  GAPDESCENT_RETURN_IF_ERROR(Optional(object, "family", &family, where));
  absl::StatusOr<GameFamily> parsed = ParseGameFamily(family);
  if (!parsed.ok()) return parsed.status();
  spec.family = *parsed;
  if (!object.contains("rows") || !object.contains("cols")) {
    return absl::InvalidArgumentError(
        absl::StrCat(where, " needs \"rows\" and \"cols\""));
  }
  GAPDESCENT_RETURN_IF_ERROR(Optional(object, "rows", &spec.rows, where));
  GAPDESCENT_RETURN_IF_ERROR(Optional(object, "cols", &spec.cols, where));
  GAPDESCENT_RETURN_IF_ERROR(Optional(object, "seed", &spec.seed, where));
  GAPDESCENT_RETURN_IF_ERROR(Optional(object, "rank", &spec.rank, where));
  GAPDESCENT_RETURN_IF_ERROR(ValidateGameSpec(spec));
  return spec;
}

template <typename T>
absl::Status ParseNamed(const json& object, const std::string& key,
                        absl::StatusOr<T> (*parse)(const std::string&), T* out,
                        const std::string& where) {
  std::string text;
  if (!object.contains(key)) return absl::OkStatus();
  GAPDESCENT_RETURN_IF_ERROR(Optional(object, key, &text, where));
  absl::StatusOr<T> parsed = parse(text);
  if (!parsed.ok()) return parsed.status();
  *out = *parsed;
  return absl::OkStatus();
}

absl::StatusOr<SolverSpec> ParseSolver(const json& object,
                                       const std::string& where) {
  if (!object.is_object()) {
    return absl::InvalidArgumentError(
        absl::StrCat(where, " must be a JSON object"));
  }
  SolverSpec solver;
  std::string type = "descent";
  GAPDESCENT_RETURN_IF_ERROR(Optional(object, "type", &type, where));
  if (type == "ogda") {
    GAPDESCENT_RETURN_IF_ERROR(
        CheckKeys(object,
                  {"name", "type", "delta", "alpha", "sqrt_decay",
                   "max_iterations", "init"},
                  where));
    solver.kind = SolverKind::kOgda;
    OgdaConfig& c = solver.ogda;
    GAPDESCENT_RETURN_IF_ERROR(Optional(object, "delta", &c.delta, where));
    GAPDESCENT_RETURN_IF_ERROR(Optional(object, "alpha", &c.alpha, where));
    GAPDESCENT_RETURN_IF_ERROR(
        Optional(object, "sqrt_decay", &c.sqrt_decay, where));
    GAPDESCENT_RETURN_IF_ERROR(
        Optional(object, "max_iterations", &c.max_iterations, where));
    GAPDESCENT_RETURN_IF_ERROR(
        ParseNamed(object, "init", &ParseInitKind, &c.init, where));
    GAPDESCENT_RETURN_IF_ERROR(ValidateOgdaConfig(c));
    solver.name = "ogda";
  } else if (type == "descent") {
    GAPDESCENT_RETURN_IF_ERROR(
        CheckKeys(object,
                  {"name", "type", "variant", "delta", "rho", "k", "epsilon",
                   "init", "lp_tolerance", "max_iterations", "rho_scale",
                   "decomposed", "reject_increases"},
                  where));
    solver.kind = SolverKind::kDescent;
    SolveConfig& c = solver.descent;
    GAPDESCENT_RETURN_IF_ERROR(
        ParseNamed(object, "variant", &ParseVariant, &c.variant, where));
    if (c.variant == Variant::kFixedSupport) {
      c.epsilon_policy = EpsilonPolicy::TernaryThenDecay();
    }
    GAPDESCENT_RETURN_IF_ERROR(ParseNamed(
        object, "epsilon", &ParseEpsilonPolicy, &c.epsilon_policy, where));
    GAPDESCENT_RETURN_IF_ERROR(Optional(object, "delta", &c.delta, where));
    GAPDESCENT_RETURN_IF_ERROR(Optional(object, "rho", &c.rho, where));
    GAPDESCENT_RETURN_IF_ERROR(Optional(object, "k", &c.support_size, where));
    GAPDESCENT_RETURN_IF_ERROR(
        ParseNamed(object, "init", &ParseInitKind, &c.init, where));
    GAPDESCENT_RETURN_IF_ERROR(
        Optional(object, "lp_tolerance", &c.lp_tolerance, where));
    GAPDESCENT_RETURN_IF_ERROR(
        Optional(object, "max_iterations", &c.max_iterations, where));
    GAPDESCENT_RETURN_IF_ERROR(
        Optional(object, "rho_scale", &c.rho_scale, where));
    GAPDESCENT_RETURN_IF_ERROR(
        Optional(object, "decomposed", &c.decomposed, where));
    GAPDESCENT_RETURN_IF_ERROR(
        Optional(object, "reject_increases", &c.reject_increases, where));
    GAPDESCENT_RETURN_IF_ERROR(ValidateSolveConfig(c));
    solver.name = VariantName(c.variant);
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown solver type '", type, "' in ", where, " (descent, ogda)"));
  }
  if (solver.kind == SolverKind::kDescent
          ? solver.descent.init == InitKind::kGiven
          : solver.ogda.init == InitKind::kGiven) {
    return absl::InvalidArgumentError(
        absl::StrCat(where, ": bench solvers cannot use a given profile"));
  }
  GAPDESCENT_RETURN_IF_ERROR(Optional(object, "name", &solver.name, where));
  return solver;
}

absl::StatusOr<SolveResult> RunSolver(const PayoffMatrix& payoffs,
                                      const SolverSpec& solver) {
  if (solver.kind == SolverKind::kOgda) return OgdaSolve(payoffs, solver.ogda);
  return Solve(payoffs, solver.descent);
}

std::string TraceFileName(const BenchConfig& config, const CellResult& cell) {
  const GameSpec& spec = config.games[cell.game_index];
  std::string stem = config.solvers[cell.solver_index].name;
  for (char& c : stem) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') c = '_';
  }
  return absl::StrFormat("g%d_%s_%dx%d_s%d_%s_r%d.csv", cell.game_index,
                         GameSpecLabel(spec), spec.rows, spec.cols,
                         cell.solver_index, stem, cell.repetition);
}

CellResult RunCell(const BenchConfig& config, int game_index, int solver_index,
                   int repetition) {
  CellResult cell;
  cell.game_index = game_index;
  cell.solver_index = solver_index;
  cell.repetition = repetition;
  cell.game = config.games[game_index];
  cell.game.seed += static_cast<uint64_t>(repetition);
  const SolverSpec& solver = config.solvers[solver_index];

  absl::StatusOr<PayoffMatrix> payoffs = Generate(cell.game);
  if (!payoffs.ok()) {
    cell.status = payoffs.status();
    return cell;
  }
  absl::StatusOr<SolveResult> result = RunSolver(*payoffs, solver);
  if (!result.ok()) {
    cell.status = result.status();
    return cell;
  }
  cell.outcome = result->trace.outcome;
  cell.stalled = result->trace.stalled;
  cell.iterations = static_cast<int64_t>(result->trace.iterations.size());
  cell.final_gap = result->final_gap;
  cell.wall_seconds = result->trace.wall_seconds;
  absl::StatusOr<Verification> verdict =
      VerifyProfile(*payoffs, result->profile, SolverDelta(solver));
  cell.verified = verdict.ok() && verdict->is_delta_nash;

  if (!config.output_dir.empty() && config.verbosity == TraceVerbosity::kFull) {
    cell.trace_path =
        (std::filesystem::path(config.output_dir) / TraceFileName(config, cell))
            .string();
    cell.status = WriteTraceFile(result->trace, {}, cell.trace_path);
  }
  return cell;
}

double Median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid]
                                : 0.5 * (values[mid - 1] + values[mid]);
}

double Mean(const std::vector<double>& values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  double total = 0.0;
  for (double v : values) total += v;
  return total / static_cast<double>(values.size());
}

std::string CsvReal(double value) {
  return std::isnan(value) ? "nan" : FormatDouble(value);
}

absl::Status WriteManifest(const BenchConfig& config, const BenchResult& result,
                           const std::string& path) {
  json doc;
  doc["generator"] = kGeneratorName;
  doc["wall_seconds"] = result.wall_seconds;
  doc["repetitions"] = config.repetitions;
  doc["cells"] = result.cells.size();
  doc["failed_cells"] = result.failed_cells;
  json cells = json::array();
  for (const CellResult& cell : result.cells) {
    json entry = {{"game", GameSpecLabel(cell.game)},
                  {"rows", cell.game.rows},
                  {"cols", cell.game.cols},
                  {"seed", cell.game.seed},
                  {"solver", config.solvers[cell.solver_index].name},
                  {"repetition", cell.repetition},
                  {"outcome", OutcomeName(cell.outcome)},
                  {"stalled", cell.stalled},
                  {"iterations", cell.iterations},
                  {"final_gap", cell.final_gap},
                  {"verified", cell.verified},
                  {"wall_seconds", cell.wall_seconds},
                  {"trace", cell.trace_path}};
    if (!cell.status.ok()) entry["error"] = cell.status.ToString();
    cells.push_back(std::move(entry));
  }
  doc["cells_detail"] = std::move(cells);
  std::ofstream out(path);
  if (!out) return absl::DataLossError(absl::StrCat("cannot write ", path));
  out << doc.dump(1) << '\n';
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("cannot write ", path));
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Verification> VerifyProfile(const PayoffMatrix& payoffs,
                                           const StrategyProfile& profile,
                                           double delta) {
  if (auto status = CheckDimensions(payoffs, profile); !status.ok()) {
    return status;
  }
  const ProfileEvaluation eval = Evaluate(payoffs, profile);
  Verification v;
  v.duality_gap = eval.duality_gap();
  absl::StatusOr<double> row = RowRegret(payoffs, profile);
  if (!row.ok()) return row.status();
  absl::StatusOr<double> col = ColRegret(payoffs, profile);
  if (!col.ok()) return col.status();
  v.row_regret = *row;
  v.col_regret = *col;
  absl::StatusOr<bool> nash = IsDeltaNash(payoffs, profile, delta);
  if (!nash.ok()) return nash.status();
  v.is_delta_nash = *nash;
  return v;
}

double SolverDelta(const SolverSpec& solver) {
  return solver.kind == SolverKind::kOgda ? solver.ogda.delta
                                          : solver.descent.delta;
}

absl::Status ValidateBenchConfig(const BenchConfig& config) {
  if (config.games.empty()) {
    return absl::InvalidArgumentError("bench config lists no games");
  }
  if (config.solvers.empty()) {
    return absl::InvalidArgumentError("bench config lists no solvers");
  }
  if (config.repetitions < 1) {
    return absl::InvalidArgumentError("repetitions must be at least 1");
  }
  if (config.threads < 0) {
    return absl::InvalidArgumentError("threads must be nonnegative");
  }
  for (const GameSpec& spec : config.games) {
    GAPDESCENT_RETURN_IF_ERROR(ValidateGameSpec(spec));
  }
  for (const SolverSpec& solver : config.solvers) {
    GAPDESCENT_RETURN_IF_ERROR(solver.kind == SolverKind::kOgda
                                   ? ValidateOgdaConfig(solver.ogda)
                                   : ValidateSolveConfig(solver.descent));
  }
  return absl::OkStatus();
}

absl::StatusOr<BenchConfig> ParseBenchConfig(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed bench config: ", e.what()));
  }
  GAPDESCENT_RETURN_IF_ERROR(CheckKeys(
      doc,
      {"games", "solvers", "repetitions", "output_dir", "verbosity", "threads"},
      "bench config"));
  BenchConfig config;
  if (!doc.contains("games") || !doc["games"].is_array()) {
    return absl::InvalidArgumentError("bench config needs a \"games\" array");
  }
  if (!doc.contains("solvers") || !doc["solvers"].is_array()) {
    return absl::InvalidArgumentError("bench config needs a \"solvers\" array");
  }
  for (size_t i = 0; i < doc["games"].size(); ++i) {
    absl::StatusOr<GameSpec> spec =
        ParseGame(doc["games"][i], absl::StrCat("games[", i, "]"));
    if (!spec.ok()) return spec.status();
    config.games.push_back(*spec);
  }
  for (size_t i = 0; i < doc["solvers"].size(); ++i) {
    absl::StatusOr<SolverSpec> solver =
        ParseSolver(doc["solvers"][i], absl::StrCat("solvers[", i, "]"));
    if (!solver.ok()) return solver.status();
    config.solvers.push_back(*std::move(solver));
  }
  GAPDESCENT_RETURN_IF_ERROR(
      Optional(doc, "repetitions", &config.repetitions, "bench config"));
  GAPDESCENT_RETURN_IF_ERROR(
      Optional(doc, "output_dir", &config.output_dir, "bench config"));
  GAPDESCENT_RETURN_IF_ERROR(
      Optional(doc, "threads", &config.threads, "bench config"));
  std::string verbosity = "full";
  GAPDESCENT_RETURN_IF_ERROR(
      Optional(doc, "verbosity", &verbosity, "bench config"));
  if (verbosity == "full") {
    config.verbosity = TraceVerbosity::kFull;
  } else if (verbosity == "summary") {
    config.verbosity = TraceVerbosity::kSummary;
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown verbosity '", verbosity, "' (full, summary)"));
  }
  GAPDESCENT_RETURN_IF_ERROR(ValidateBenchConfig(config));
  return config;
}

absl::StatusOr<SolverSpec> ParseSolverSpec(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed solver config: ", e.what()));
  }
  return ParseSolver(doc, "solver config");
}

absl::StatusOr<BenchConfig> ReadBenchConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  return ParseBenchConfig(in);
}

std::vector<SummaryRow> Summarize(const BenchConfig& config,
                                  const std::vector<CellResult>& cells) {
  std::vector<SummaryRow> rows;
  for (size_t g = 0; g < config.games.size(); ++g) {
    for (size_t s = 0; s < config.solvers.size(); ++s) {
      std::vector<double> iterations;
      std::vector<double> gaps;
      int converged = 0;
      int total = 0;
      for (const CellResult& cell : cells) {
        if (cell.game_index != static_cast<int>(g) ||
            cell.solver_index != static_cast<int>(s)) {
          continue;
        }
        ++total;
        if (!cell.status.ok() && cell.iterations == 0) continue;
        iterations.push_back(static_cast<double>(cell.iterations));
        gaps.push_back(cell.final_gap);
        if (cell.outcome == Outcome::kConverged) ++converged;
      }
      const GameSpec& spec = config.games[g];
      SummaryRow row;
      row.family = GameSpecLabel(spec);
      row.size = absl::StrCat(spec.rows, "x", spec.cols);
      row.variant = config.solvers[s].name;
      row.repetitions = total;
      row.mean_iterations = Mean(iterations);
      row.median_iterations = Median(iterations);
      row.convergence_rate = total == 0 ? 0.0
                                        : static_cast<double>(converged) /
                                              static_cast<double>(total);
      row.mean_final_gap = Mean(gaps);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void WriteSummaryCsv(const std::vector<SummaryRow>& rows, std::ostream& out) {
  out << kSummaryCsvHeader << '\n';
  for (const SummaryRow& row : rows) {
    out << row.family << ',' << row.size << ',' << row.variant << ','
        << row.repetitions << ',' << CsvReal(row.mean_iterations) << ','
        << CsvReal(row.median_iterations) << ','
        << CsvReal(row.convergence_rate) << ',' << CsvReal(row.mean_final_gap)
        << '\n';
  }
}

absl::StatusOr<BenchResult> RunBench(const BenchConfig& config) {
  GAPDESCENT_RETURN_IF_ERROR(ValidateBenchConfig(config));
  if (!config.output_dir.empty()) {
    std::error_code error;
    std::filesystem::create_directories(config.output_dir, error);
    if (error || !std::filesystem::is_directory(config.output_dir)) {
      return absl::DataLossError(
          absl::StrCat("cannot create output directory ", config.output_dir));
    }
  }
  const auto start = std::chrono::steady_clock::now();

  struct Job {
    int game;
    int solver;
    int repetition;
  };
  std::vector<Job> jobs;
  for (int g = 0; g < static_cast<int>(config.games.size()); ++g) {
    for (int s = 0; s < static_cast<int>(config.solvers.size()); ++s) {
      for (int r = 0; r < config.repetitions; ++r) jobs.push_back({g, s, r});
    }
  }

  BenchResult result;
  result.cells.resize(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      result.cells[i] =
          RunCell(config, jobs[i].game, jobs[i].solver, jobs[i].repetition);
    }
  };
  int threads = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp<int>(threads, 1, static_cast<int>(jobs.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (const CellResult& cell : result.cells) {
    if (!cell.status.ok()) ++result.failed_cells;
  }
  result.summary = Summarize(config, result.cells);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  if (!config.output_dir.empty()) {
    const std::filesystem::path dir(config.output_dir);
    const std::string summary_path = (dir / "summary.csv").string();
    std::ofstream out(summary_path);
    if (out) WriteSummaryCsv(result.summary, out);
    out.close();
    if (!out) {
      return absl::DataLossError(absl::StrCat("cannot write ", summary_path));
    }
    GAPDESCENT_RETURN_IF_ERROR(
        WriteManifest(config, result, (dir / "manifest.json").string()));
  }
  return result;
}

}  // namespace gapdescent
