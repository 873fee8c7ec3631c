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

#include "gapdescent/directional.h"

#include <algorithm>
#include <limits>

#include "absl/strings/str_cat.h"

namespace gapdescent {
namespace {

absl::StatusOr<DirectionalDerivativeResult> DerivativeOverSets(
    const PayoffMatrix& payoffs, const StrategyProfile& profile,
    const StrategyProfile& direction, double rho) {
  if (auto status = CheckDimensions(payoffs, profile); !status.ok()) {
    return status;
  }
  if (auto status = CheckDimensions(payoffs, direction); !status.ok()) {
    return status;
  }
  const ProfileEvaluation eval = Evaluate(payoffs, profile);
  DirectionalDerivativeResult result;
  result.row_active_set =
      BestResponsesFromPayoffs(eval.row_payoffs, Player::kRow, rho);
  result.col_active_set =
      BestResponsesFromPayoffs(eval.col_payoffs, Player::kCol, rho);
  result.value = RestrictedGamma(payoffs, direction, result.row_active_set,
                                 result.col_active_set) -
                 eval.duality_gap();
  return result;
}

}  // namespace

double RestrictedGamma(const PayoffMatrix& payoffs,
                       const StrategyProfile& direction,
                       const BestResponseSet& rows,
                       const BestResponseSet& cols) {
  const Eigen::MatrixXd& r = payoffs.entries();
  double row_max = -std::numeric_limits<double>::infinity();
  for (int i : rows.indices) {
    row_max = std::max(row_max, r.row(i).dot(direction.col.probs()));
  }
  double col_min = std::numeric_limits<double>::infinity();
  for (int j : cols.indices) {
    col_min = std::min(col_min, r.col(j).dot(direction.row.probs()));
  }
  return row_max - col_min;
}

absl::StatusOr<DirectionalDerivativeResult> DirectionalDerivative(
    const PayoffMatrix& payoffs, const StrategyProfile& profile,
    const StrategyProfile& direction) {
  return DerivativeOverSets(payoffs, profile, direction, 0.0);
}

absl::StatusOr<DirectionalDerivativeResult> RhoDirectionalDerivative(
    const PayoffMatrix& payoffs, const StrategyProfile& profile,
    const StrategyProfile& direction, double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("rho = ", rho, " must lie in (0,1]"));
  }
  return DerivativeOverSets(payoffs, profile, direction, rho);
}

}  // namespace gapdescent
