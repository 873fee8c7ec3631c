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

#ifndef GAPDESCENT_OGDA_H_
#define GAPDESCENT_OGDA_H_

#include <cstdint>
#include <optional>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "gapdescent/descent.h"
#include "gapdescent/game.h"

namespace gapdescent {

// Euclidean projection onto the probability simplex (sort-and-threshold).
// v must be finite and nonempty.
MixedStrategy ProjectSimplex(const Eigen::VectorXd& v);

// Projected optimistic gradient play on f(x, y) = x'Ry. The row player
// ascends along Ry, the column player descends along R'x, each with the
// extrapolated gradient 2 g_t - g_{t-1}.
struct OgdaState {
  StrategyProfile profile;
  Eigen::VectorXd previous_row_gradient;  // R y_{t-1}
  Eigen::VectorXd previous_col_gradient;  // R'x_{t-1}
  double alpha = 0.01;
  int64_t t = 0;

  // Previous gradients start equal to the current ones, so the first step
  // is a plain projected gradient step.
  static OgdaState Start(const PayoffMatrix& payoffs, StrategyProfile profile,
                         double alpha);
};

// One update with step size `step` (state.alpha unless a schedule says
// otherwise).
OgdaState OgdaStep(const PayoffMatrix& payoffs, const OgdaState& state,
                   double step);
OgdaState OgdaStep(const PayoffMatrix& payoffs, const OgdaState& state);

struct OgdaConfig {
  double delta = 0.01;
  double alpha = 0.01;
  // alpha_t = alpha / sqrt(t + 1) instead of a constant step.
  bool sqrt_decay = false;
  int64_t max_iterations = 100000;
  InitKind init = InitKind::kPureFirst;
  std::optional<StrategyProfile> initial_profile;
};

absl::Status ValidateOgdaConfig(const OgdaConfig& config);

// Iterates until V <= delta or the cap. The trace uses the descent schema:
// epsilon holds the step size, gamma and rho_i are NaN, and the set columns
// hold the support sizes of x and y.
absl::StatusOr<SolveResult> OgdaSolve(const PayoffMatrix& payoffs,
                                      const OgdaConfig& config);

}  // namespace gapdescent

#endif  // GAPDESCENT_OGDA_H_
