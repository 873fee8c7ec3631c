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

#include "cli.h"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "gapdescent/bench.h"
#include "gapdescent/descent.h"
#include "gapdescent/find_direction.h"
#include "gapdescent/generators.h"
#include "gapdescent/io.h"
#include "gapdescent/ogda.h"
#include "gapdescent/trace_io.h"

namespace gapdescent {
namespace {

int ExitCodeFor(const absl::Status& status) {
  return status.code() == absl::StatusCode::kInvalidArgument ? kExitInvalidInput
                                                             : kExitIoFailure;
}

int Fail(const absl::Status& status, std::ostream& err) {
  err << "error: " << status.message() << '\n';
  return ExitCodeFor(status);
}

// Flags shared by `solve` and `bench`. Unset options leave the config alone.
struct SolverFlags {
  std::optional<std::string> variant;
  std::optional<double> delta;
  std::optional<double> rho;
  std::optional<int> k;
  std::optional<std::string> init;
  std::optional<double> lp_tolerance;
  std::optional<int64_t> max_iters;
  std::optional<std::string> epsilon;
  std::optional<double> alpha;

  void Register(CLI::App* app) {
    app->add_option("--variant", variant,
                    "plain, decay_delta, decay_delta_rho, fixed_support, ogda"
                    " or full_lp");
    app->add_option("--delta", delta, "target accuracy in (0, 1]");
    app->add_option("--rho", rho, "best-response slack in (0, 1]");
    app->add_option("--k", k, "fixed-support set size");
    app->add_option("--init", init, "pure or uniform");
    app->add_option("--lp-tolerance", lp_tolerance,
                    "LP objective gap tolerance, 0 for exact");
    app->add_option("--max-iters", max_iters, "iteration cap");
    app->add_option("--epsilon", epsilon,
                    "half_rho, constant:<v>, ternary_decay or exact_line");
    app->add_option("--alpha", alpha, "OGDA step size");
  }

  absl::Status Apply(SolverSpec* solver) const {
    if (variant && *variant == "ogda") {
      solver->kind = SolverKind::kOgda;
      solver->name = "ogda";
    } else if (variant) {
      absl::StatusOr<Variant> parsed = ParseVariant(*variant);
      if (!parsed.ok()) return parsed.status();
      solver->kind = SolverKind::kDescent;
      solver->descent.variant = *parsed;
      if (*parsed == Variant::kFixedSupport && !epsilon) {
        solver->descent.epsilon_policy = EpsilonPolicy::TernaryThenDecay();
      }
      solver->name = VariantName(*parsed);
    }
    std::optional<InitKind> init_kind;
    if (init) {
      absl::StatusOr<InitKind> parsed = ParseInitKind(*init);
      if (!parsed.ok()) return parsed.status();
      init_kind = *parsed;
    }
    if (solver->kind == SolverKind::kOgda) {
      OgdaConfig& c = solver->ogda;
      if (delta) c.delta = *delta;
      if (alpha) c.alpha = *alpha;
      if (max_iters) c.max_iterations = *max_iters;
      if (init_kind) c.init = *init_kind;
      return ValidateOgdaConfig(c);
    }
    SolveConfig& c = solver->descent;
    if (epsilon) {
      absl::StatusOr<EpsilonPolicy> parsed = ParseEpsilonPolicy(*epsilon);
      if (!parsed.ok()) return parsed.status();
      c.epsilon_policy = *parsed;
    }
    if (delta) c.delta = *delta;
    if (rho) c.rho = *rho;
    if (k) c.support_size = *k;
    if (lp_tolerance) c.lp_tolerance = *lp_tolerance;
    if (max_iters) c.max_iterations = *max_iters;
    if (init_kind) c.init = *init_kind;
    return ValidateSolveConfig(c);
  }
};

absl::StatusOr<PayoffMatrix> LoadGame(const std::string& path) {
  absl::StatusOr<Eigen::MatrixXd> entries = ReadMatrixFile(path);
  if (!entries.ok()) return entries.status();
  return PayoffMatrix::Create(*std::move(entries));
}

absl::Status MakeDirectory(const std::string& dir) {
  std::error_code error;
  std::filesystem::create_directories(dir, error);
  if (error || !std::filesystem::is_directory(dir)) {
    return absl::DataLossError(absl::StrCat("cannot create directory ", dir));
  }
  return absl::OkStatus();
}

int RunGenerate(const std::string& family, int rows, int cols, int rank,
                uint64_t seed, const std::string& out_path, std::ostream& out,
                std::ostream& err) {
  absl::StatusOr<GameFamily> parsed = ParseGameFamily(family);
  if (!parsed.ok()) return Fail(parsed.status(), err);
  GameSpec spec{*parsed, rank, rows, cols, seed};
  absl::StatusOr<PayoffMatrix> payoffs = Generate(spec);
  if (!payoffs.ok()) return Fail(payoffs.status(), err);
  if (out_path.empty() || out_path == "-") {
    WriteMatrixCsv(payoffs->entries(), out);
    return kExitOk;
  }
  if (absl::Status s = WriteMatrixFile(payoffs->entries(), out_path); !s.ok()) {
    return Fail(s, err);
  }
  out << "wrote " << GameSpecLabel(spec) << ' ' << rows << 'x' << cols
      << " seed " << seed << " to " << out_path << '\n';
  return kExitOk;
}

int RunSolve(const std::string& matrix_path, const std::string& config_path,
             const std::string& out_dir, const SolverFlags& flags,
             std::ostream& out, std::ostream& err) {
  SolverSpec solver;
  solver.name = VariantName(solver.descent.variant);
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      return Fail(
          absl::NotFoundError(absl::StrCat("cannot open ", config_path)), err);
    }
    absl::StatusOr<SolverSpec> parsed = ParseSolverSpec(in);
    if (!parsed.ok()) return Fail(parsed.status(), err);
    solver = *std::move(parsed);
  }
  const bool full_lp = flags.variant && *flags.variant == "full_lp";
  SolverFlags effective = flags;
  if (full_lp) effective.variant.reset();
  if (absl::Status s = effective.Apply(&solver); !s.ok()) return Fail(s, err);

  absl::StatusOr<PayoffMatrix> payoffs = LoadGame(matrix_path);
  if (!payoffs.ok()) return Fail(payoffs.status(), err);

  StrategyProfile profile;
  std::optional<SolveTrace> trace;
  if (full_lp) {
    absl::StatusOr<StrategyProfile> result =
        FullGameLp(*payoffs, solver.descent.lp_tolerance);
    if (!result.ok()) return Fail(result.status(), err);
    profile = *std::move(result);
  } else {
    absl::StatusOr<SolveResult> result = solver.kind == SolverKind::kOgda
                                             ? OgdaSolve(*payoffs, solver.ogda)
                                             : Solve(*payoffs, solver.descent);
    if (!result.ok()) return Fail(result.status(), err);
    profile = std::move(result->profile);
    trace = std::move(result->trace);
  }

  const double gap = Evaluate(*payoffs, profile).duality_gap();
  if (!out_dir.empty()) {
    if (absl::Status s = MakeDirectory(out_dir); !s.ok()) return Fail(s, err);
    const std::filesystem::path dir(out_dir);
    if (absl::Status s = WriteProfileFile(*payoffs, profile,
                                          (dir / "profile.json").string());
        !s.ok()) {
      return Fail(s, err);
    }
    if (trace) {
      TraceMetadata metadata{full_lp ? "full_lp" : solver.name, matrix_path,
                             kGeneratorName, SolverDelta(solver)};
      for (const char* name : {"trace.csv", "trace.json"}) {
        if (absl::Status s =
                WriteTraceFile(*trace, metadata, (dir / name).string());
            !s.ok()) {
          return Fail(s, err);
        }
      }
    }
  } else {
    WriteProfileJson(*payoffs, profile, out);
  }
  if (trace) {
    out << "outcome " << OutcomeName(trace->outcome) << " after "
        << trace->iterations.size() << " iterations, duality gap "
        << FormatDouble(gap) << '\n';
  } else {
    out << "full LP duality gap " << FormatDouble(gap) << '\n';
  }
  return kExitOk;
}

int RunBenchCommand(const std::string& config_path, const std::string& out_dir,
                    std::optional<uint64_t> seed, const SolverFlags& flags,
                    std::ostream& out, std::ostream& err) {
  absl::StatusOr<BenchConfig> config = ReadBenchConfigFile(config_path);
  if (!config.ok()) return Fail(config.status(), err);
  if (!out_dir.empty()) config->output_dir = out_dir;
  if (seed) {
    for (GameSpec& spec : config->games) spec.seed = *seed;
  }
  if (flags.variant && *flags.variant == "full_lp") {
    return Fail(absl::InvalidArgumentError("bench does not run full_lp"), err);
  }
  for (SolverSpec& solver : config->solvers) {
    if (absl::Status s = flags.Apply(&solver); !s.ok()) return Fail(s, err);
  }
  absl::StatusOr<BenchResult> result = RunBench(*config);
  if (!result.ok()) return Fail(result.status(), err);
  WriteSummaryCsv(result->summary, out);
  for (const CellResult& cell : result->cells) {
    if (!cell.status.ok()) {
      err << "cell " << GameSpecLabel(cell.game) << " seed " << cell.game.seed
          << " solver " << config->solvers[cell.solver_index].name << ": "
          << cell.status.message() << '\n';
    }
  }
  return result->failed_cells == 0 ? kExitOk : kExitIoFailure;
}

int RunVerify(const std::string& matrix_path, const std::string& profile_path,
              double delta, std::ostream& out, std::ostream& err) {
  if (!(delta >= 0.0)) {
    return Fail(absl::InvalidArgumentError("delta must be nonnegative"), err);
  }
  absl::StatusOr<PayoffMatrix> payoffs = LoadGame(matrix_path);
  if (!payoffs.ok()) return Fail(payoffs.status(), err);
  absl::StatusOr<StrategyProfile> profile = ReadProfileFile(profile_path);
  if (!profile.ok()) return Fail(profile.status(), err);
  absl::StatusOr<Verification> v = VerifyProfile(*payoffs, *profile, delta);
  if (!v.ok()) return Fail(v.status(), err);
  out << "delta_nash " << (v->is_delta_nash ? "true" : "false")
      << "\nduality_gap " << FormatDouble(v->duality_gap) << "\nrow_regret "
      << FormatDouble(v->row_regret) << "\ncol_regret "
      << FormatDouble(v->col_regret) << '\n';
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Approximate Nash equilibria of zero-sum matrix games",
               "gapdescent"};
  app.require_subcommand(1);

  std::string family = "uniform";
  int rows = 0;
  int cols = 0;
  int rank = 0;
  uint64_t seed = 0;
  std::string out_path;
  CLI::App* generate = app.add_subcommand("generate", "write a random game");
  generate->add_option("--family", family, "uniform, gaussian or lowrank");
  generate->add_option("--rows,-m", rows, "row count")->required();
  generate->add_option("--cols,-n", cols, "column count")->required();
  generate->add_option("--rank", rank, "rank of lowrank games");
  generate->add_option("--seed", seed, "random seed");
  generate->add_option("--out", out_path, "output file (.csv or .json)");

  std::string matrix_path;
  std::string config_path;
  std::string out_dir;
  SolverFlags solve_flags;
  CLI::App* solve = app.add_subcommand("solve", "solve one game");
  solve->add_option("--matrix", matrix_path, "payoff matrix file")->required();
  solve->add_option("--config", config_path, "solver config JSON");
  solve->add_option("--out", out_dir,
                    "directory for profile.json, trace.csv and trace.json");
  solve_flags.Register(solve);

  std::string bench_config;
  std::string bench_out;
  std::optional<uint64_t> bench_seed;
  SolverFlags bench_flags;
  CLI::App* bench = app.add_subcommand("bench", "run a benchmark grid");
  bench->add_option("--config", bench_config, "bench config JSON")->required();
  bench->add_option("--out", bench_out, "output directory");
  bench->add_option("--seed", bench_seed, "base seed for every game");
  bench_flags.Register(bench);

  std::string verify_matrix;
  std::string verify_profile;
  double verify_delta = 0.01;
  CLI::App* verify = app.add_subcommand("verify", "check a delta-Nash claim");
  verify->add_option("--matrix", verify_matrix, "payoff matrix file")
      ->required();
  verify->add_option("--profile", verify_profile, "profile JSON")->required();
  verify->add_option("--delta", verify_delta, "accuracy to certify");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInvalidInput;
  }

  if (*generate) {
    return RunGenerate(family, rows, cols, rank, seed, out_path, out, err);
  }
  if (*solve) {
    return RunSolve(matrix_path, config_path, out_dir, solve_flags, out, err);
  }
  if (*bench) {
    return RunBenchCommand(bench_config, bench_out, bench_seed, bench_flags,
                           out, err);
  }
  return RunVerify(verify_matrix, verify_profile, verify_delta, out, err);
}

}  // namespace gapdescent
