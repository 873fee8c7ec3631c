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

#ifndef GAPDESCENT_FIND_DIRECTION_H_
#define GAPDESCENT_FIND_DIRECTION_H_

#include "absl/status/statusor.h"
#include "gapdescent/game.h"

namespace gapdescent {

// Output of the direction-finding LP. `gamma` is recomputed from the
// returned (cleaned) direction over the index sets, so it is exactly the
// restricted objective of `direction`; `lp_objective` is what the solver
// reported and differs from it only by LP tolerance and rounding.
struct DirectionResult {
  StrategyProfile direction;
  double gamma = 0.0;
  double lp_objective = 0.0;
  BestResponseSet row_set;
  BestResponseSet col_set;
  // Inequality rows handed to the LP solver. Joint form: |rows| * |cols|.
  // Decomposed form: |rows| for the first LP and |cols| for the second.
  int first_lp_inequalities = 0;
  int second_lp_inequalities = 0;
  int lp_iterations = 0;

  int row_set_size() const { return row_set.size(); }
  int col_set_size() const { return col_set.size(); }
};

// Joint program over (x', y', gamma):
//   min gamma  s.t.  e_i'Ry' - x''Re_j <= gamma  for i in rows, j in cols,
//                    x', y' on their simplices.
absl::StatusOr<DirectionResult> DirectionOverSetsJoint(
    const PayoffMatrix& payoffs, const BestResponseSet& rows,
    const BestResponseSet& cols, double lp_tolerance);

// The same optimum as two independent programs, one per player:
//   min g1 s.t. e_i'Ry' <= g1 (i in rows);  min g2 s.t. -x''Re_j <= g2
//   (j in cols). gamma = g1 + g2.
absl::StatusOr<DirectionResult> DirectionOverSetsDecomposed(
    const PayoffMatrix& payoffs, const BestResponseSet& rows,
    const BestResponseSet& cols, double lp_tolerance);

// Direction minimizing the rho-directional derivative at `profile`, with the
// index sets taken as the rho-best responses. rho must lie in (0, 1].
absl::StatusOr<DirectionResult> FindDirection(const PayoffMatrix& payoffs,
                                              const StrategyProfile& profile,
                                              double rho, double lp_tolerance);
absl::StatusOr<DirectionResult> FindDirectionDecomposed(
    const PayoffMatrix& payoffs, const StrategyProfile& profile, double rho,
    double lp_tolerance);

// Maximin/minimax strategies of the whole game from the classic LP pair,
// i.e. the decomposed program with every index active.
absl::StatusOr<StrategyProfile> FullGameLp(const PayoffMatrix& payoffs,
                                           double lp_tolerance);

}  // namespace gapdescent

#endif  // GAPDESCENT_FIND_DIRECTION_H_
