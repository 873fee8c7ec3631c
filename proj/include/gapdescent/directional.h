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

#ifndef GAPDESCENT_DIRECTIONAL_H_
#define GAPDESCENT_DIRECTIONAL_H_

#include "absl/status/statusor.h"
#include "gapdescent/game.h"

namespace gapdescent {

// One-sided derivative of the duality gap V at z toward a profile z' on the
// product of simplices, moving along (1 - eps) z + eps z'.
struct DirectionalDerivativeResult {
  double value = 0.0;
  BestResponseSet row_active_set;
  BestResponseSet col_active_set;
};

// max_{i in BR_r(y)} e_i'Ry' - min_{j in BR_c(x)} x''Re_j - V(z), with exact
// best-response sets (rho = 0 plus kMembershipSlack).
absl::StatusOr<DirectionalDerivativeResult> DirectionalDerivative(
    const PayoffMatrix& payoffs, const StrategyProfile& profile,
    const StrategyProfile& direction);

// Same expression over the rho-best-response sets. Upper-bounds
// DirectionalDerivative() for every direction; rho must lie in (0, 1].
absl::StatusOr<DirectionalDerivativeResult> RhoDirectionalDerivative(
    const PayoffMatrix& payoffs, const StrategyProfile& profile,
    const StrategyProfile& direction, double rho);

// max_{i in rows} e_i'Ry' - min_{j in cols} x''Re_j for a direction (x', y').
// This is the objective the direction-finding LP minimizes; the rho
// derivative equals it minus V(z).
double RestrictedGamma(const PayoffMatrix& payoffs,
                       const StrategyProfile& direction,
                       const BestResponseSet& rows,
                       const BestResponseSet& cols);

}  // namespace gapdescent

#endif  // GAPDESCENT_DIRECTIONAL_H_
