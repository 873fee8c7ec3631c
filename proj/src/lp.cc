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

#include "gapdescent/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "Eigen/LU"
#include "absl/strings/str_cat.h"

namespace gapdescent {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Reduced costs smaller than this in magnitude count as optimal.
constexpr double kPricingTolerance = 1e-10;
// Tableau entries smaller than this never become pivots.
constexpr double kPivotTolerance = 1e-9;
// Steps shorter than this are degenerate.
constexpr double kDegenerateStep = 1e-12;
// Consecutive degenerate pivots before switching to Bland's rule.
constexpr int kDegenerateRunBeforeBland = 30;
// Pivots between Lagrangian bound evaluations in tolerance mode.
constexpr int kBoundCheckInterval = 5;

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class ColumnState { kBasic, kAtLower, kAtUpper };

// Internal standard form: M s = rhs, 0 <= s <= upper. Each original variable
// maps to one or two internal columns, v = offset + sum(sign * s).
class DenseSimplex {
 public:
  explicit DenseSimplex(const LinearProgram& lp) : lp_(lp) {}

  absl::StatusOr<LpSolution> Solve(double tolerance);

 private:
  enum class PhaseResult { kOptimal, kUnbounded, kToleranceReached };

  bool BuildStandardForm();
  std::vector<bool> ChooseStartingBounds() const;
  absl::StatusOr<PhaseResult> RunPhase(bool phase_two, double tolerance);
  void Pivot(int row, int col);
  void ComputeReducedCosts();
  double ColumnValue(int col) const;
  double InternalObjective() const;
  double LagrangianBound() const;
  void DriveOutArtificials();
  void RefineBasicValues();
  LpSolution ExtractSolution(LpStatus status, double bound) const;

  const LinearProgram& lp_;

  // Column bookkeeping.
  std::vector<int> column_var_;        // -1 for slacks and artificials
  std::vector<double> column_sign_;    // coefficient of s in v
  Eigen::VectorXd offset_;             // per original variable
  Eigen::VectorXd upper_;              // per internal column
  Eigen::VectorXd phase_two_cost_;     // per internal column
  std::vector<int> slack_col_of_row_;  // -1 for equality rows
  std::vector<int> initial_col_of_row_;
  std::vector<bool> is_artificial_;
  int num_structural_ = 0;

  RowMajorMatrix constraints_;  // M, kept for bounds and refinement
  Eigen::VectorXd rhs_;

  RowMajorMatrix tableau_;  // B^{-1} M
  Eigen::VectorXd basic_values_;
  std::vector<int> basis_;
  std::vector<ColumnState> state_;
  Eigen::VectorXd cost_;
  Eigen::VectorXd reduced_;
  int iterations_ = 0;
};

// Boxed variables start at whichever bound leaves fewer inequality rows
// violated at the initial point, since each violated row needs an
// artificial. Greedy in variable order.
std::vector<bool> DenseSimplex::ChooseStartingBounds() const {
  const int n = lp_.num_variables();
  std::vector<bool> at_upper(n, false);
  if (lp_.num_inequalities() == 0) return at_upper;
  Eigen::VectorXd start = lp_.lower_bounds;
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(start[j])) start[j] = 0.0;
  }
  Eigen::VectorXd residual = lp_.inequality_rhs - lp_.inequality_matrix * start;
  for (int j = 0; j < n; ++j) {
    const double lo = lp_.lower_bounds[j];
    const double hi = lp_.upper_bounds[j];
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo == hi) continue;
    const Eigen::VectorXd moved =
        residual - (hi - lo) * lp_.inequality_matrix.col(j);
    if ((moved.array() < 0.0).count() < (residual.array() < 0.0).count()) {
      at_upper[j] = true;
      residual = moved;
    }
  }
  return at_upper;
}

bool DenseSimplex::BuildStandardForm() {
  const int n = lp_.num_variables();
  for (int j = 0; j < n; ++j) {
    if (lp_.lower_bounds[j] > lp_.upper_bounds[j]) return false;
  }
  const std::vector<bool> start_at_upper = ChooseStartingBounds();
  offset_ = Eigen::VectorXd::Zero(n);
  std::vector<double> col_upper;
  std::vector<double> col_cost;
  for (int j = 0; j < n; ++j) {
    const double lo = lp_.lower_bounds[j];
    const double hi = lp_.upper_bounds[j];
    const double c = lp_.objective[j];
    if (std::isfinite(lo) && !start_at_upper[j]) {
      offset_[j] = lo;
      column_var_.push_back(j);
      column_sign_.push_back(1.0);
      col_upper.push_back(std::isfinite(hi) ? hi - lo : kInf);
      col_cost.push_back(c);
    } else if (std::isfinite(hi)) {
      offset_[j] = hi;
      column_var_.push_back(j);
      column_sign_.push_back(-1.0);
      col_upper.push_back(hi - lo);
      col_cost.push_back(-c);
    } else {
      for (double sign : {1.0, -1.0}) {
        column_var_.push_back(j);
        column_sign_.push_back(sign);
        col_upper.push_back(kInf);
        col_cost.push_back(sign * c);
      }
    }
  }
  num_structural_ = static_cast<int>(column_var_.size());

  const int num_ineq = lp_.num_inequalities();
  const int num_rows = num_ineq + lp_.num_equalities();
  RowMajorMatrix structural(num_rows, num_structural_);
  rhs_.resize(num_rows);
  for (int r = 0; r < num_rows; ++r) {
    const bool ineq = r < num_ineq;
    const auto row = ineq ? lp_.inequality_matrix.row(r)
                          : lp_.equality_matrix.row(r - num_ineq);
    const double b =
        ineq ? lp_.inequality_rhs[r] : lp_.equality_rhs[r - num_ineq];
    rhs_[r] = b - row.dot(offset_);
    for (int c = 0; c < num_structural_; ++c) {
      structural(r, c) = column_sign_[c] * row[column_var_[c]];
    }
  }

  // Slacks for inequality rows, then artificials wherever the initial basis
  // cannot use a +1 slack.
  std::vector<double> row_sign(num_rows, 1.0);
  int num_art = 0;
  for (int r = 0; r < num_rows; ++r) {
    if (rhs_[r] < 0.0) row_sign[r] = -1.0;
    if (r >= num_ineq || row_sign[r] < 0.0) ++num_art;
  }
  const int num_cols = num_structural_ + num_ineq + num_art;
  constraints_ = RowMajorMatrix::Zero(num_rows, num_cols);
  constraints_.leftCols(num_structural_) = structural;
  slack_col_of_row_.assign(num_rows, -1);
  initial_col_of_row_.assign(num_rows, -1);
  is_artificial_.assign(num_cols, false);
  int next_art = num_structural_ + num_ineq;
  for (int r = 0; r < num_rows; ++r) {
    if (r < num_ineq) {
      slack_col_of_row_[r] = num_structural_ + r;
      constraints_(r, num_structural_ + r) = 1.0;
    }
    if (row_sign[r] < 0.0) {
      constraints_.row(r) *= -1.0;
      rhs_[r] = -rhs_[r];
    }
    if (r < num_ineq && row_sign[r] > 0.0) {
      initial_col_of_row_[r] = num_structural_ + r;
    } else {
      constraints_(r, next_art) = 1.0;
      is_artificial_[next_art] = true;
      initial_col_of_row_[r] = next_art++;
    }
  }

  upper_ = Eigen::VectorXd::Constant(num_cols, kInf);
  phase_two_cost_ = Eigen::VectorXd::Zero(num_cols);
  for (int c = 0; c < num_structural_; ++c) {
    upper_[c] = col_upper[c];
    phase_two_cost_[c] = col_cost[c];
  }
  return true;
}

double DenseSimplex::ColumnValue(int col) const {
  switch (state_[col]) {
    case ColumnState::kAtLower:
      return 0.0;
    case ColumnState::kAtUpper:
      return upper_[col];
    case ColumnState::kBasic:
      break;
  }
  for (size_t r = 0; r < basis_.size(); ++r) {
    if (basis_[r] == col) return basic_values_[r];
  }
  return 0.0;
}

double DenseSimplex::InternalObjective() const {
  double total = 0.0;
  for (int c = 0; c < cost_.size(); ++c) {
    if (state_[c] == ColumnState::kAtUpper) total += cost_[c] * upper_[c];
  }
  for (size_t r = 0; r < basis_.size(); ++r) {
    total += cost_[basis_[r]] * basic_values_[r];
  }
  return total;
}

void DenseSimplex::ComputeReducedCosts() {
  reduced_ = cost_;
  for (size_t r = 0; r < basis_.size(); ++r) {
    const double cb = cost_[basis_[r]];
    if (cb != 0.0) reduced_ -= cb * tableau_.row(r).transpose();
  }
  for (int b : basis_) reduced_[b] = 0.0;
}

void DenseSimplex::Pivot(int row, int col) {
  const double pivot = tableau_(row, col);
  tableau_.row(row) /= pivot;
  for (Eigen::Index r = 0; r < tableau_.rows(); ++r) {
    if (r == row) continue;
    const double factor = tableau_(r, col);
    if (factor != 0.0) tableau_.row(r) -= factor * tableau_.row(row);
    tableau_(r, col) = 0.0;
  }
  tableau_(row, col) = 1.0;
  const double d = reduced_[col];
  if (d != 0.0) reduced_ -= d * tableau_.row(row).transpose();
  reduced_[col] = 0.0;
}

// Weak duality for the partial Lagrangian that keeps 0 <= s <= upper and
// dualizes the rows. Multipliers come from the reduced costs of each row's
// initial identity column; inequality multipliers are projected onto the
// sign that keeps the slack term bounded.
double DenseSimplex::LagrangianBound() const {
  const int num_rows = static_cast<int>(rhs_.size());
  Eigen::VectorXd pi(num_rows);
  for (int r = 0; r < num_rows; ++r) {
    pi[r] = -reduced_[initial_col_of_row_[r]];
    const int slack = slack_col_of_row_[r];
    if (slack >= 0 && constraints_(r, slack) * pi[r] > 0.0) pi[r] = 0.0;
  }
  const Eigen::VectorXd priced = cost_ - constraints_.transpose() * pi;
  double bound = pi.dot(rhs_);
  for (Eigen::Index c = 0; c < priced.size(); ++c) {
    if (upper_[c] == 0.0) continue;
    const double d = priced[c];
    if (d >= -1e-13) continue;
    if (!std::isfinite(upper_[c])) return -kInf;
    bound += d * upper_[c];
  }
  return bound;
}

absl::StatusOr<DenseSimplex::PhaseResult> DenseSimplex::RunPhase(
    bool phase_two, double tolerance) {
  const int num_rows = static_cast<int>(basis_.size());
  const int num_cols = static_cast<int>(cost_.size());
  const int iteration_limit = 200 * (num_rows + num_cols) + 1000;
  int degenerate_run = 0;
  int since_bound_check = kBoundCheckInterval;
  for (int local = 0;; ++local) {
    if (local > iteration_limit) {
      return absl::InternalError(
          absl::StrCat("simplex exceeded ", iteration_limit, " pivots"));
    }
    if (phase_two && tolerance > 0.0 &&
        ++since_bound_check >= kBoundCheckInterval) {
      since_bound_check = 0;
      if (InternalObjective() - LagrangianBound() <= tolerance) {
        return PhaseResult::kToleranceReached;
      }
    }
    const bool bland = degenerate_run >= kDegenerateRunBeforeBland;

    // Pricing.
    int entering = -1;
    double best = 0.0;
    for (int c = 0; c < num_cols; ++c) {
      if (state_[c] == ColumnState::kBasic || upper_[c] == 0.0) continue;
      const double d = reduced_[c];
      double score = 0.0;
      if (state_[c] == ColumnState::kAtLower && d < -kPricingTolerance) {
        score = -d;
      } else if (state_[c] == ColumnState::kAtUpper && d > kPricingTolerance) {
        score = d;
      } else {
        continue;
      }
      if (bland) {
        entering = c;
        break;
      }
      if (score > best) {
        best = score;
        entering = c;
      }
    }
    if (entering < 0) return PhaseResult::kOptimal;

    // Ratio test. Basic values move by -step * direction * column.
    const double direction =
        state_[entering] == ColumnState::kAtLower ? 1.0 : -1.0;
    double step = upper_[entering];
    int leaving_row = -1;
    bool leaving_to_upper = false;
    double leaving_pivot = 0.0;
    for (int r = 0; r < num_rows; ++r) {
      const double g = direction * tableau_(r, entering);
      const int b = basis_[r];
      double limit;
      bool to_upper;
      if (g > kPivotTolerance) {
        limit = std::max(basic_values_[r], 0.0) / g;
        to_upper = false;
      } else if (g < -kPivotTolerance && std::isfinite(upper_[b])) {
        limit = std::max(upper_[b] - basic_values_[r], 0.0) / -g;
        to_upper = true;
      } else {
        continue;
      }
      bool take = false;
      if (leaving_row < 0) {
        take = limit <= step;
      } else if (limit < step - kDegenerateStep) {
        take = true;
      } else if (limit <= step + kDegenerateStep) {
        // Tie: Bland keeps the smallest basic index, Dantzig the largest
        // pivot magnitude.
        take = bland ? b < basis_[leaving_row]
                     : std::abs(g) > std::abs(leaving_pivot);
      }
      if (take) {
        step = std::min(step, limit);
        leaving_row = r;
        leaving_to_upper = to_upper;
        leaving_pivot = g;
      }
    }
    if (leaving_row < 0 && !std::isfinite(step)) {
      return PhaseResult::kUnbounded;
    }

    ++iterations_;
    degenerate_run = step <= kDegenerateStep ? degenerate_run + 1 : 0;
    basic_values_ -= (step * direction) * tableau_.col(entering);

    if (leaving_row < 0) {
      // Bound flip: the entering column moves across its box.
      state_[entering] =
          direction > 0 ? ColumnState::kAtUpper : ColumnState::kAtLower;
      continue;
    }
    const int leaving = basis_[leaving_row];
    state_[leaving] =
        leaving_to_upper ? ColumnState::kAtUpper : ColumnState::kAtLower;
    basic_values_[leaving_row] = direction > 0 ? step : upper_[entering] - step;
    basis_[leaving_row] = entering;
    state_[entering] = ColumnState::kBasic;
    Pivot(leaving_row, entering);
  }
}

void DenseSimplex::DriveOutArtificials() {
  const int num_cols = static_cast<int>(cost_.size());
  for (size_t r = 0; r < basis_.size(); ++r) {
    if (!is_artificial_[basis_[r]]) continue;
    int best_col = -1;
    double best_mag = kPivotTolerance;
    for (int c = 0; c < num_cols; ++c) {
      if (is_artificial_[c] || state_[c] == ColumnState::kBasic) continue;
      const double mag = std::abs(tableau_(r, c));
      if (mag > best_mag) {
        best_mag = mag;
        best_col = c;
      }
    }
    // No candidate: the row is redundant and its artificial stays basic,
    // pinned at zero by its bound.
    if (best_col < 0) continue;
    const int leaving = basis_[r];
    state_[leaving] = ColumnState::kAtLower;
    basic_values_[r] = ColumnValue(best_col);
    basis_[r] = best_col;
    state_[best_col] = ColumnState::kBasic;
    Pivot(static_cast<int>(r), best_col);
  }
}

// Recomputes basic values from scratch by factoring the basis columns of the
// original constraints, x_B = B^{-1}(rhs - N_upper u).
void DenseSimplex::RefineBasicValues() {
  const int num_rows = static_cast<int>(basis_.size());
  if (num_rows == 0) return;
  Eigen::VectorXd adjusted = rhs_;
  for (int c = 0; c < upper_.size(); ++c) {
    if (state_[c] == ColumnState::kAtUpper) {
      adjusted -= upper_[c] * constraints_.col(c);
    }
  }
  Eigen::MatrixXd basis_matrix(num_rows, num_rows);
  for (int r = 0; r < num_rows; ++r) {
    basis_matrix.col(r) = constraints_.col(basis_[r]);
  }
  basic_values_ = basis_matrix.partialPivLu().solve(adjusted);
  for (int r = 0; r < num_rows; ++r) {
    const double hi = upper_[basis_[r]];
    basic_values_[r] = std::clamp(basic_values_[r], 0.0, hi);
  }
}

LpSolution DenseSimplex::ExtractSolution(LpStatus status, double bound) const {
  LpSolution solution;
  solution.status = status;
  solution.iterations = iterations_;
  solution.values = offset_;
  for (int c = 0; c < num_structural_; ++c) {
    solution.values[column_var_[c]] += column_sign_[c] * ColumnValue(c);
  }
  for (int j = 0; j < lp_.num_variables(); ++j) {
    solution.values[j] = std::clamp(solution.values[j], lp_.lower_bounds[j],
                                    lp_.upper_bounds[j]);
  }
  solution.objective_value = lp_.objective.dot(solution.values);
  solution.dual_bound = bound + lp_.objective.dot(offset_);
  return solution;
}

absl::StatusOr<LpSolution> DenseSimplex::Solve(double tolerance) {
  if (!BuildStandardForm()) {
    LpSolution infeasible;
    infeasible.status = LpStatus::kInfeasible;
    infeasible.values = Eigen::VectorXd::Zero(lp_.num_variables());
    return infeasible;
  }
  const int num_rows = static_cast<int>(rhs_.size());
  const int num_cols = static_cast<int>(upper_.size());
  tableau_ = constraints_;
  basic_values_ = rhs_;
  basis_ = initial_col_of_row_;
  state_.assign(num_cols, ColumnState::kAtLower);
  for (int b : basis_) state_[b] = ColumnState::kBasic;

  // Phase one: minimize the sum of artificials.
  if (num_rows > 0 && std::any_of(is_artificial_.begin(), is_artificial_.end(),
                                  [](bool a) { return a; })) {
    cost_ = Eigen::VectorXd::Zero(num_cols);
    for (int c = 0; c < num_cols; ++c) {
      if (is_artificial_[c]) cost_[c] = 1.0;
    }
    ComputeReducedCosts();
    absl::StatusOr<PhaseResult> phase_one = RunPhase(false, 0.0);
    if (!phase_one.ok()) return phase_one.status();
    RefineBasicValues();
    const double scale =
        std::max(1.0, rhs_.size() > 0 ? rhs_.cwiseAbs().maxCoeff() : 0.0);
    if (InternalObjective() > kLpFeasibilityTolerance * scale) {
      LpSolution infeasible = ExtractSolution(LpStatus::kInfeasible, -kInf);
      return infeasible;
    }
    for (int c = 0; c < num_cols; ++c) {
      if (is_artificial_[c]) upper_[c] = 0.0;
    }
    DriveOutArtificials();
  }

  cost_ = phase_two_cost_;
  ComputeReducedCosts();
  absl::StatusOr<PhaseResult> phase_two = RunPhase(true, tolerance);
  if (!phase_two.ok()) return phase_two.status();
  if (*phase_two == PhaseResult::kUnbounded) {
    return ExtractSolution(LpStatus::kUnbounded, -kInf);
  }
  RefineBasicValues();
  const LpStatus status = *phase_two == PhaseResult::kOptimal
                              ? LpStatus::kOptimal
                              : LpStatus::kToleranceReached;
  LpSolution solution = ExtractSolution(status, LagrangianBound());

  // Final feasibility audit in the caller's variables.
  const Eigen::VectorXd& v = solution.values;
  double violation = 0.0;
  if (lp_.num_inequalities() > 0) {
    violation = std::max(
        violation, (lp_.inequality_matrix * v - lp_.inequality_rhs).maxCoeff());
  }
  if (lp_.num_equalities() > 0) {
    violation = std::max(
        violation,
        (lp_.equality_matrix * v - lp_.equality_rhs).cwiseAbs().maxCoeff());
  }
  if (violation > kLpFeasibilityTolerance) {
    return absl::InternalError(absl::StrCat(
        "simplex returned a point violating constraints by ", violation));
  }
  return solution;
}

}  // namespace

LinearProgram LinearProgram::WithVariables(int num_variables) {
  LinearProgram lp;
  lp.objective = Eigen::VectorXd::Zero(num_variables);
  lp.inequality_matrix.resize(0, num_variables);
  lp.inequality_rhs.resize(0);
  lp.equality_matrix.resize(0, num_variables);
  lp.equality_rhs.resize(0);
  lp.lower_bounds = Eigen::VectorXd::Zero(num_variables);
  lp.upper_bounds = Eigen::VectorXd::Constant(num_variables, kInf);
  return lp;
}

absl::Status ValidateLinearProgram(const LinearProgram& lp) {
  const Eigen::Index n = lp.objective.size();
  if (lp.inequality_matrix.cols() != n || lp.equality_matrix.cols() != n) {
    return absl::InvalidArgumentError(
        absl::StrCat("constraint matrices must have ", n, " columns"));
  }
  if (lp.inequality_matrix.rows() != lp.inequality_rhs.size() ||
      lp.equality_matrix.rows() != lp.equality_rhs.size()) {
    return absl::InvalidArgumentError(
        "constraint rows and right-hand sides disagree");
  }
  if (lp.lower_bounds.size() != n || lp.upper_bounds.size() != n) {
    return absl::InvalidArgumentError(
        absl::StrCat("bounds must have ", n, " entries"));
  }
  if (!lp.objective.allFinite() || !lp.inequality_matrix.allFinite() ||
      !lp.inequality_rhs.allFinite() || !lp.equality_matrix.allFinite() ||
      !lp.equality_rhs.allFinite()) {
    return absl::InvalidArgumentError("coefficients must be finite");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::isnan(lp.lower_bounds[j]) || std::isnan(lp.upper_bounds[j]) ||
        lp.lower_bounds[j] == kInf || lp.upper_bounds[j] == -kInf) {
      return absl::InvalidArgumentError(
          absl::StrCat("variable ", j, " has invalid bounds"));
    }
  }
  return absl::OkStatus();
}

std::string LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kToleranceReached:
      return "tolerance_reached";
  }
  return "unknown";
}

absl::StatusOr<LpSolution> SolveLp(const LinearProgram& lp, double tolerance) {
  if (auto status = ValidateLinearProgram(lp); !status.ok()) return status;
  if (!(tolerance >= 0.0)) {
    return absl::InvalidArgumentError("tolerance must be non-negative");
  }
  DenseSimplex simplex(lp);
  return simplex.Solve(tolerance);
}

}  // namespace gapdescent
