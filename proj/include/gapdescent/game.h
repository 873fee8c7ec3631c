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

#ifndef GAPDESCENT_GAME_H_
#define GAPDESCENT_GAME_H_

#include <string>
#include <utility>
#include <vector>

#include "Eigen/Core"
#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace gapdescent {

// Vocabulary for bilinear zero-sum games (R, -R). The row player receives
// x'Ry and maximizes it; the column player minimizes it.

// Slack applied to best-response membership and regret comparisons. Absorbs
// accumulation error in the payoff vectors Ry and R'x.
inline constexpr double kMembershipSlack = 1e-12;

// Tolerance on the probability sum below which MixedStrategy::Create
// renormalizes silently. Larger deviations are rejected.
inline constexpr double kRenormalizeTolerance = 1e-6;

enum class Player { kRow, kCol };

std::string PlayerName(Player player);

// Row player's payoffs, every entry in [0, 1].
class PayoffMatrix {
 public:
  // Validates shape (m, n >= 1), finiteness, and range [0, 1]. Use
  // NormalizePayoffs() for arbitrary real matrices.
  static absl::StatusOr<PayoffMatrix> Create(Eigen::MatrixXd entries);

  int rows() const { return static_cast<int>(entries_.rows()); }
  int cols() const { return static_cast<int>(entries_.cols()); }
  double operator()(int i, int j) const { return entries_(i, j); }
  const Eigen::MatrixXd& entries() const { return entries_; }

 private:
  explicit PayoffMatrix(Eigen::MatrixXd entries)
      : entries_(std::move(entries)) {}

  Eigen::MatrixXd entries_;
};

// Affine rescale (raw - min) / (max - min). A constant matrix maps to the
// all-0.5 matrix. Non-finite entries are rejected.
absl::StatusOr<PayoffMatrix> NormalizePayoffs(const Eigen::MatrixXd& raw);

// A point on the probability simplex.
class MixedStrategy {
 public:
  // Empty placeholder so aggregates can be default-constructed; not a valid
  // strategy until assigned.
  MixedStrategy() = default;

  // Clips components in [-1e-9, 0) to zero, renormalizes when the sum is
  // within kRenormalizeTolerance of 1, rejects everything else.
  static absl::StatusOr<MixedStrategy> Create(Eigen::VectorXd probs);

  static MixedStrategy Pure(int size, int index);
  static MixedStrategy Uniform(int size);

  // (1 - weight) * from + weight * to. Both inputs must have equal size and
  // weight must lie in [0, 1]; the result stays on the simplex up to
  // rounding.
  static MixedStrategy Mix(const MixedStrategy& from, const MixedStrategy& to,
                           double weight);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[i]; }
  const Eigen::VectorXd& probs() const { return probs_; }

 private:
  explicit MixedStrategy(Eigen::VectorXd probs) : probs_(std::move(probs)) {}

  Eigen::VectorXd probs_;
};

// (x, y). Also used for descent directions (x', y').
struct StrategyProfile {
  MixedStrategy row;
  MixedStrategy col;

  static StrategyProfile Mix(const StrategyProfile& from,
                             const StrategyProfile& to, double weight) {
    return {MixedStrategy::Mix(from.row, to.row, weight),
            MixedStrategy::Mix(from.col, to.col, weight)};
  }
};

// Sorted pure-strategy indices that are rho-best responses for `player`.
struct BestResponseSet {
  Player player = Player::kRow;
  double rho = 0.0;
  std::vector<int> indices;

  int size() const { return static_cast<int>(indices.size()); }
  bool Contains(int index) const;
};

absl::Status CheckDimensions(const PayoffMatrix& payoffs,
                             const StrategyProfile& profile);

// Payoff vectors against a fixed opponent strategy: RowPayoffs gives
// e_i'Ry for every row i, ColPayoffs gives x'Re_j for every column j.
Eigen::VectorXd RowPayoffs(const PayoffMatrix& payoffs,
                           const MixedStrategy& col_strategy);
Eigen::VectorXd ColPayoffs(const PayoffMatrix& payoffs,
                           const MixedStrategy& row_strategy);

// Cached evaluation of one profile. All quantities derive from Ry and R'x,
// so computing them together costs two matrix-vector products.
struct ProfileEvaluation {
  Eigen::VectorXd row_payoffs;  // Ry
  Eigen::VectorXd col_payoffs;  // R'x
  double value = 0.0;           // x'Ry
  double best_row_payoff = 0.0;
  double best_col_payoff = 0.0;  // min_j x'Re_j

  double duality_gap() const { return best_row_payoff - best_col_payoff; }
  double row_regret() const { return best_row_payoff - value; }
  double col_regret() const { return value - best_col_payoff; }
};

// Unchecked: dimensions must agree.
ProfileEvaluation Evaluate(const PayoffMatrix& payoffs,
                           const StrategyProfile& profile);

// V(x, y) = max_i e_i'Ry - min_j x'Re_j.
absl::StatusOr<double> DualityGap(const PayoffMatrix& payoffs,
                                  const StrategyProfile& profile);
// f_R = max_i e_i'Ry - x'Ry.
absl::StatusOr<double> RowRegret(const PayoffMatrix& payoffs,
                                 const StrategyProfile& profile);
// f_{-R} = x'Ry - min_j x'Re_j.
absl::StatusOr<double> ColRegret(const PayoffMatrix& payoffs,
                                 const StrategyProfile& profile);

// Row: {i : e_i'Ry >= max_k e_k'Ry - rho}. Col: {j : x'Re_j <= min_k x'Re_k
// + rho}. Ties are always included.
absl::StatusOr<BestResponseSet> BestResponses(
    const PayoffMatrix& payoffs, Player player,
    const MixedStrategy& opponent_strategy, double rho);

// Same selection on a precomputed payoff vector (Ry for the row player, R'x
// for the column player).
BestResponseSet BestResponsesFromPayoffs(const Eigen::VectorXd& payoffs,
                                         Player player, double rho);

// True iff neither player gains more than delta by a pure deviation.
absl::StatusOr<bool> IsDeltaNash(const PayoffMatrix& payoffs,
                                 const StrategyProfile& profile, double delta);

}  // namespace gapdescent

#endif  // GAPDESCENT_GAME_H_
