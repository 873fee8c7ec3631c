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

#ifndef GAPDESCENT_LP_H_
#define GAPDESCENT_LP_H_

#include <string>

#include "Eigen/Core"
#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace gapdescent {

// Dense linear program
//
//   minimize    c'v
//   subject to  A v <= b
//               E v  = d
//               lower <= v <= upper
//
// Bounds may be infinite. All matrices are dense; the solver targets the
// small restricted programs built by the direction finder.
struct LinearProgram {
  Eigen::VectorXd objective;
  Eigen::MatrixXd inequality_matrix;
  Eigen::VectorXd inequality_rhs;
  Eigen::MatrixXd equality_matrix;
  Eigen::VectorXd equality_rhs;
  Eigen::VectorXd lower_bounds;
  Eigen::VectorXd upper_bounds;

  // Zero objective, no constraints, bounds [0, +inf).
  static LinearProgram WithVariables(int num_variables);

  int num_variables() const { return static_cast<int>(objective.size()); }
  int num_inequalities() const {
    return static_cast<int>(inequality_matrix.rows());
  }
  int num_equalities() const {
    return static_cast<int>(equality_matrix.rows());
  }
};

// Shapes agree, coefficients are finite, bounds are not NaN.
absl::Status ValidateLinearProgram(const LinearProgram& lp);

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kToleranceReached };

std::string LpStatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::VectorXd values;
  double objective_value = 0.0;
  // Lagrangian lower bound on the optimum at termination; -inf when the
  // iterate's multipliers do not give a finite bound.
  double dual_bound = 0.0;
  int iterations = 0;
};

// Returned values satisfy every constraint to within this tolerance when the
// status is kOptimal or kToleranceReached.
inline constexpr double kLpFeasibilityTolerance = 1e-9;

// Two-phase bounded-variable primal simplex on a dense tableau. Pricing is
// Dantzig's rule, switching to Bland's rule after a run of degenerate pivots
// so the method cannot cycle.
//
// With tolerance > 0 the second phase stops as soon as the objective of the
// current (feasible) iterate is within `tolerance` of its Lagrangian bound,
// reporting kToleranceReached. tolerance = 0 runs to optimality. The result
// is deterministic for a fixed input.
//
// Returns InvalidArgumentError for malformed programs and InternalError if
// the iteration safeguard trips or the final point fails the feasibility
// check.
absl::StatusOr<LpSolution> SolveLp(const LinearProgram& lp, double tolerance);

}  // namespace gapdescent

#endif  // GAPDESCENT_LP_H_
