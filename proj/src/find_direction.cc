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

#include "gapdescent/find_direction.h"

#include <numeric>
#include <utility>

#include "absl/strings/str_cat.h"
#include "gapdescent/directional.h"
#include "gapdescent/lp.h"

namespace gapdescent {
namespace {

absl::Status CheckSets(const PayoffMatrix& payoffs, const BestResponseSet& rows,
                       const BestResponseSet& cols) {
  if (rows.indices.empty() || cols.indices.empty()) {
    return absl::InvalidArgumentError("index sets must be nonempty");
  }
  for (int i : rows.indices) {
    if (i < 0 || i >= payoffs.rows()) {
      return absl::InvalidArgumentError(absl::StrCat("bad row index ", i));
    }
  }
  for (int j : cols.indices) {
    if (j < 0 || j >= payoffs.cols()) {
      return absl::InvalidArgumentError(absl::StrCat("bad column index ", j));
    }
  }
  return absl::OkStatus();
}

// LP statuses other than optimal/tolerance cannot occur on these programs
// (nonempty feasible region, bounded objective), so they surface as
// internal errors.
absl::StatusOr<LpSolution> SolveDirectionLp(const LinearProgram& lp,
                                            double tolerance) {
  absl::StatusOr<LpSolution> solution = SolveLp(lp, tolerance);
  if (!solution.ok()) return solution.status();
  if (solution->status != LpStatus::kOptimal &&
      solution->status != LpStatus::kToleranceReached) {
    return absl::InternalError(
        absl::StrCat("direction LP returned ", LpStatusName(solution->status)));
  }
  return solution;
}

absl::StatusOr<MixedStrategy> CleanSimplexPoint(const Eigen::VectorXd& v) {
  Eigen::VectorXd clipped = v.cwiseMax(0.0);
  const double total = clipped.sum();
  if (!(total > 0.0)) {
    return absl::InternalError("direction LP returned an empty strategy");
  }
  return MixedStrategy::Create(clipped / total);
}

LinearProgram SimplexProgram(int num_strategies, double gamma_lo,
                             double gamma_hi, int num_rows) {
  LinearProgram lp = LinearProgram::WithVariables(num_strategies + 1);
  lp.objective[num_strategies] = 1.0;
  lp.upper_bounds.head(num_strategies).setOnes();
  lp.lower_bounds[num_strategies] = gamma_lo;
  lp.upper_bounds[num_strategies] = gamma_hi;
  lp.equality_matrix = Eigen::MatrixXd::Zero(1, num_strategies + 1);
  lp.equality_matrix.row(0).head(num_strategies).setOnes();
  lp.equality_rhs = Eigen::VectorXd::Ones(1);
  lp.inequality_matrix = Eigen::MatrixXd::Zero(num_rows, num_strategies + 1);
  lp.inequality_matrix.col(num_strategies).setConstant(-1.0);
  lp.inequality_rhs = Eigen::VectorXd::Zero(num_rows);
  return lp;
}

BestResponseSet AllIndices(Player player, int count) {
  BestResponseSet set;
  set.player = player;
  set.rho = 1.0;
  set.indices.resize(count);
  std::iota(set.indices.begin(), set.indices.end(), 0);
  return set;
}

}  // namespace

absl::StatusOr<DirectionResult> DirectionOverSetsJoint(
    const PayoffMatrix& payoffs, const BestResponseSet& rows,
    const BestResponseSet& cols, double lp_tolerance) {
  if (auto status = CheckSets(payoffs, rows, cols); !status.ok()) {
    return status;
  }
  const int m = payoffs.rows();
  const int n = payoffs.cols();
  const Eigen::MatrixXd& r = payoffs.entries();
  const int num_pairs = rows.size() * cols.size();

  // Variables: x' (m), y' (n), gamma.
  LinearProgram lp = LinearProgram::WithVariables(m + n + 1);
  lp.objective[m + n] = 1.0;
  lp.upper_bounds.head(m + n).setOnes();
  lp.lower_bounds[m + n] = -1.0;
  lp.upper_bounds[m + n] = 1.0;
  lp.equality_matrix = Eigen::MatrixXd::Zero(2, m + n + 1);
  lp.equality_matrix.row(0).head(m).setOnes();
  lp.equality_matrix.row(1).segment(m, n).setOnes();
  lp.equality_rhs = Eigen::VectorXd::Ones(2);
  lp.inequality_matrix = Eigen::MatrixXd::Zero(num_pairs, m + n + 1);
  lp.inequality_rhs = Eigen::VectorXd::Zero(num_pairs);
  int k = 0;
  for (int i : rows.indices) {
    for (int j : cols.indices) {
      lp.inequality_matrix.row(k).head(m) = -r.col(j).transpose();
      lp.inequality_matrix.row(k).segment(m, n) = r.row(i);
      lp.inequality_matrix(k, m + n) = -1.0;
      ++k;
    }
  }
  absl::StatusOr<LpSolution> solution = SolveDirectionLp(lp, lp_tolerance);
  if (!solution.ok()) return solution.status();

  absl::StatusOr<MixedStrategy> x = CleanSimplexPoint(solution->values.head(m));
  if (!x.ok()) return x.status();
  absl::StatusOr<MixedStrategy> y =
      CleanSimplexPoint(solution->values.segment(m, n));
  if (!y.ok()) return y.status();

  DirectionResult result;
  result.direction = {*std::move(x), *std::move(y)};
  result.row_set = rows;
  result.col_set = cols;
  result.lp_objective = solution->objective_value;
  result.gamma = RestrictedGamma(payoffs, result.direction, rows, cols);
  result.first_lp_inequalities = num_pairs;
  result.lp_iterations = solution->iterations;
  return result;
}

absl::StatusOr<DirectionResult> DirectionOverSetsDecomposed(
    const PayoffMatrix& payoffs, const BestResponseSet& rows,
    const BestResponseSet& cols, double lp_tolerance) {
  if (auto status = CheckSets(payoffs, rows, cols); !status.ok()) {
    return status;
  }
  const int m = payoffs.rows();
  const int n = payoffs.cols();
  const Eigen::MatrixXd& r = payoffs.entries();

  // Column player's direction y': min g1 with R_i y' <= g1.
  LinearProgram first = SimplexProgram(n, 0.0, 1.0, rows.size());
  for (int k = 0; k < rows.size(); ++k) {
    first.inequality_matrix.row(k).head(n) = r.row(rows.indices[k]);
  }
  // Row player's direction x': min g2 with -x''R_j <= g2.
  LinearProgram second = SimplexProgram(m, -1.0, 0.0, cols.size());
  for (int k = 0; k < cols.size(); ++k) {
    second.inequality_matrix.row(k).head(m) =
        -r.col(cols.indices[k]).transpose();
  }

  absl::StatusOr<LpSolution> first_solution =
      SolveDirectionLp(first, lp_tolerance);
  if (!first_solution.ok()) return first_solution.status();
  absl::StatusOr<LpSolution> second_solution =
      SolveDirectionLp(second, lp_tolerance);
  if (!second_solution.ok()) return second_solution.status();

  absl::StatusOr<MixedStrategy> x =
      CleanSimplexPoint(second_solution->values.head(m));
  if (!x.ok()) return x.status();
  absl::StatusOr<MixedStrategy> y =
      CleanSimplexPoint(first_solution->values.head(n));
  if (!y.ok()) return y.status();

  DirectionResult result;
  result.direction = {*std::move(x), *std::move(y)};
  result.row_set = rows;
  result.col_set = cols;
  result.lp_objective =
      first_solution->objective_value + second_solution->objective_value;
  result.gamma = RestrictedGamma(payoffs, result.direction, rows, cols);
  result.first_lp_inequalities = rows.size();
  result.second_lp_inequalities = cols.size();
  result.lp_iterations =
      first_solution->iterations + second_solution->iterations;
  return result;
}

namespace {

absl::StatusOr<std::pair<BestResponseSet, BestResponseSet>> RhoSets(
    const PayoffMatrix& payoffs, const StrategyProfile& profile, double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("rho = ", rho, " must lie in (0,1]"));
  }
  if (auto status = CheckDimensions(payoffs, profile); !status.ok()) {
    return status;
  }
  const ProfileEvaluation eval = Evaluate(payoffs, profile);
  return std::make_pair(
      BestResponsesFromPayoffs(eval.row_payoffs, Player::kRow, rho),
      BestResponsesFromPayoffs(eval.col_payoffs, Player::kCol, rho));
}

}  // namespace

absl::StatusOr<DirectionResult> FindDirection(const PayoffMatrix& payoffs,
                                              const StrategyProfile& profile,
                                              double rho, double lp_tolerance) {
  auto sets = RhoSets(payoffs, profile, rho);
  if (!sets.ok()) return sets.status();
  return DirectionOverSetsJoint(payoffs, sets->first, sets->second,
                                lp_tolerance);
}

absl::StatusOr<DirectionResult> FindDirectionDecomposed(
    const PayoffMatrix& payoffs, const StrategyProfile& profile, double rho,
    double lp_tolerance) {
  auto sets = RhoSets(payoffs, profile, rho);
  if (!sets.ok()) return sets.status();
  return DirectionOverSetsDecomposed(payoffs, sets->first, sets->second,
                                     lp_tolerance);
}

absl::StatusOr<StrategyProfile> FullGameLp(const PayoffMatrix& payoffs,
                                           double lp_tolerance) {
  absl::StatusOr<DirectionResult> result = DirectionOverSetsDecomposed(
      payoffs, AllIndices(Player::kRow, payoffs.rows()),
      AllIndices(Player::kCol, payoffs.cols()), lp_tolerance);
  if (!result.ok()) return result.status();
  return std::move(result->direction);
}

}  // namespace gapdescent
