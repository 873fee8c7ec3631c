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

#include "gapdescent/game.h"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace gapdescent {

std::string PlayerName(Player player) {
  return player == Player::kRow ? "row" : "col";
}

absl::StatusOr<PayoffMatrix> PayoffMatrix::Create(Eigen::MatrixXd entries) {
  if (entries.rows() < 1 || entries.cols() < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("payoff matrix must be at least 1x1, got ", entries.rows(),
                     "x", entries.cols()));
  }
  for (Eigen::Index j = 0; j < entries.cols(); ++j) {
    for (Eigen::Index i = 0; i < entries.rows(); ++i) {
      const double v = entries(i, j);
      if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        return absl::InvalidArgumentError(absl::StrCat(
            "payoff entry (", i, ",", j, ") = ", v, " is outside [0,1]"));
      }
    }
  }
  return PayoffMatrix(std::move(entries));
}

absl::StatusOr<PayoffMatrix> NormalizePayoffs(const Eigen::MatrixXd& raw) {
  if (raw.rows() < 1 || raw.cols() < 1) {
    return absl::InvalidArgumentError("payoff matrix must be at least 1x1");
  }
  if (!raw.allFinite()) {
    return absl::InvalidArgumentError("payoff matrix has non-finite entries");
  }
  const double lo = raw.minCoeff();
  const double hi = raw.maxCoeff();
  if (hi == lo) {
    return PayoffMatrix::Create(
        Eigen::MatrixXd::Constant(raw.rows(), raw.cols(), 0.5));
  }
  Eigen::MatrixXd scaled = (raw.array() - lo) / (hi - lo);
  // Division can overshoot the endpoints by one ulp.
  scaled = scaled.cwiseMax(0.0).cwiseMin(1.0);
  return PayoffMatrix::Create(std::move(scaled));
}

absl::StatusOr<MixedStrategy> MixedStrategy::Create(Eigen::VectorXd probs) {
  if (probs.size() < 1) {
    return absl::InvalidArgumentError("mixed strategy must be nonempty");
  }
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (!std::isfinite(probs[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("probability ", i, " is not finite"));
    }
    if (probs[i] < 0.0) {
      if (probs[i] < -1e-9) {
        return absl::InvalidArgumentError(
            absl::StrCat("probability ", i, " = ", probs[i], " is negative"));
      }
      probs[i] = 0.0;
    }
  }
  const double total = probs.sum();
  if (std::abs(total - 1.0) > kRenormalizeTolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat("probabilities sum to ", total, ", expected 1"));
  }
  if (total != 1.0) probs /= total;
  return MixedStrategy(std::move(probs));
}

MixedStrategy MixedStrategy::Pure(int size, int index) {
  assert(size >= 1 && index >= 0 && index < size);
  Eigen::VectorXd probs = Eigen::VectorXd::Zero(size);
  probs[index] = 1.0;
  return MixedStrategy(std::move(probs));
}

MixedStrategy MixedStrategy::Uniform(int size) {
  assert(size >= 1);
  return MixedStrategy(Eigen::VectorXd::Constant(size, 1.0 / size));
}

MixedStrategy MixedStrategy::Mix(const MixedStrategy& from,
                                 const MixedStrategy& to, double weight) {
  assert(from.size() == to.size());
  assert(weight >= 0.0 && weight <= 1.0);
  if (weight == 0.0) return from;
  if (weight == 1.0) return to;
  return MixedStrategy((1.0 - weight) * from.probs_ + weight * to.probs_);
}

bool BestResponseSet::Contains(int index) const {
  return std::binary_search(indices.begin(), indices.end(), index);
}

absl::Status CheckDimensions(const PayoffMatrix& payoffs,
                             const StrategyProfile& profile) {
  if (profile.row.size() != payoffs.rows() ||
      profile.col.size() != payoffs.cols()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "profile of sizes (", profile.row.size(), ",", profile.col.size(),
        ") does not match a ", payoffs.rows(), "x", payoffs.cols(), " game"));
  }
  return absl::OkStatus();
}

Eigen::VectorXd RowPayoffs(const PayoffMatrix& payoffs,
                           const MixedStrategy& col_strategy) {
  return payoffs.entries() * col_strategy.probs();
}

Eigen::VectorXd ColPayoffs(const PayoffMatrix& payoffs,
                           const MixedStrategy& row_strategy) {
  return payoffs.entries().transpose() * row_strategy.probs();
}

ProfileEvaluation Evaluate(const PayoffMatrix& payoffs,
                           const StrategyProfile& profile) {
  ProfileEvaluation eval;
  eval.row_payoffs = RowPayoffs(payoffs, profile.col);
  eval.col_payoffs = ColPayoffs(payoffs, profile.row);
  eval.value = profile.row.probs().dot(eval.row_payoffs);
  eval.best_row_payoff = eval.row_payoffs.maxCoeff();
  eval.best_col_payoff = eval.col_payoffs.minCoeff();
  return eval;
}

absl::StatusOr<double> DualityGap(const PayoffMatrix& payoffs,
                                  const StrategyProfile& profile) {
  if (auto status = CheckDimensions(payoffs, profile); !status.ok()) {
    return status;
  }
  return Evaluate(payoffs, profile).duality_gap();
}

absl::StatusOr<double> RowRegret(const PayoffMatrix& payoffs,
                                 const StrategyProfile& profile) {
  if (auto status = CheckDimensions(payoffs, profile); !status.ok()) {
    return status;
  }
  return Evaluate(payoffs, profile).row_regret();
}

absl::StatusOr<double> ColRegret(const PayoffMatrix& payoffs,
                                 const StrategyProfile& profile) {
  if (auto status = CheckDimensions(payoffs, profile); !status.ok()) {
    return status;
  }
  return Evaluate(payoffs, profile).col_regret();
}

BestResponseSet BestResponsesFromPayoffs(const Eigen::VectorXd& payoffs,
                                         Player player, double rho) {
  BestResponseSet set;
  set.player = player;
  set.rho = rho;
  if (player == Player::kRow) {
    const double threshold = payoffs.maxCoeff() - rho - kMembershipSlack;
    for (Eigen::Index i = 0; i < payoffs.size(); ++i) {
      if (payoffs[i] >= threshold) set.indices.push_back(static_cast<int>(i));
    }
  } else {
    const double threshold = payoffs.minCoeff() + rho + kMembershipSlack;
    for (Eigen::Index j = 0; j < payoffs.size(); ++j) {
      if (payoffs[j] <= threshold) set.indices.push_back(static_cast<int>(j));
    }
  }
  return set;
}

absl::StatusOr<BestResponseSet> BestResponses(
    const PayoffMatrix& payoffs, Player player,
    const MixedStrategy& opponent_strategy, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("rho = ", rho, " must lie in [0,1]"));
  }
  const int expected = player == Player::kRow ? payoffs.cols() : payoffs.rows();
  if (opponent_strategy.size() != expected) {
    return absl::InvalidArgumentError(
        absl::StrCat("opponent strategy has size ", opponent_strategy.size(),
                     ", expected ", expected));
  }
  const Eigen::VectorXd vec = player == Player::kRow
                                  ? RowPayoffs(payoffs, opponent_strategy)
                                  : ColPayoffs(payoffs, opponent_strategy);
  return BestResponsesFromPayoffs(vec, player, rho);
}

absl::StatusOr<bool> IsDeltaNash(const PayoffMatrix& payoffs,
                                 const StrategyProfile& profile, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta = ", delta, " must lie in [0,1]"));
  }
  if (auto status = CheckDimensions(payoffs, profile); !status.ok()) {
    return status;
  }
  const ProfileEvaluation eval = Evaluate(payoffs, profile);
  return eval.row_regret() <= delta + kMembershipSlack &&
         eval.col_regret() <= delta + kMembershipSlack;
}

}  // namespace gapdescent
