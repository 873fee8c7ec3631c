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

#include "gapdescent/ogda.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"

namespace gapdescent {
namespace {

int SupportSize(const MixedStrategy& s) {
  return static_cast<int>((s.probs().array() > 0.0).count());
}

}  // namespace

MixedStrategy ProjectSimplex(const Eigen::VectorXd& v) {
  std::vector<double> sorted(v.data(), v.data() + v.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double prefix = 0.0;
  double theta = 0.0;
  for (size_t k = 0; k < sorted.size(); ++k) {
    prefix += sorted[k];
    const double candidate = (prefix - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) theta = candidate;
  }
  Eigen::VectorXd p = (v.array() - theta).cwiseMax(0.0);
  const double total = p.sum();
  if (!(total > 0.0)) {
    // Only reachable through rounding when all entries tie.
    return MixedStrategy::Uniform(static_cast<int>(v.size()));
  }
  return *MixedStrategy::Create(p / total);
}

OgdaState OgdaState::Start(const PayoffMatrix& payoffs, StrategyProfile profile,
                           double alpha) {
  OgdaState state;
  state.previous_row_gradient = RowPayoffs(payoffs, profile.col);
  state.previous_col_gradient = ColPayoffs(payoffs, profile.row);
  state.profile = std::move(profile);
  state.alpha = alpha;
  return state;
}

OgdaState OgdaStep(const PayoffMatrix& payoffs, const OgdaState& state,
                   double step) {
  const Eigen::VectorXd row_gradient = RowPayoffs(payoffs, state.profile.col);
  const Eigen::VectorXd col_gradient = ColPayoffs(payoffs, state.profile.row);
  OgdaState next;
  next.profile.row =
      ProjectSimplex(state.profile.row.probs() + 2.0 * step * row_gradient -
                     step * state.previous_row_gradient);
  next.profile.col =
      ProjectSimplex(state.profile.col.probs() - 2.0 * step * col_gradient +
                     step * state.previous_col_gradient);
  next.previous_row_gradient = row_gradient;
  next.previous_col_gradient = col_gradient;
  next.alpha = state.alpha;
  next.t = state.t + 1;
  return next;
}

OgdaState OgdaStep(const PayoffMatrix& payoffs, const OgdaState& state) {
  return OgdaStep(payoffs, state, state.alpha);
}

absl::Status ValidateOgdaConfig(const OgdaConfig& config) {
  if (!(config.delta > 0.0 && config.delta <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta = ", config.delta, " must lie in (0,1]"));
  }
  if (!(config.alpha > 0.0) || !std::isfinite(config.alpha)) {
    return absl::InvalidArgumentError(
        absl::StrCat("step size ", config.alpha, " must be positive"));
  }
  if (config.max_iterations < 1) {
    return absl::InvalidArgumentError("max iterations must be positive");
  }
  if (config.init == InitKind::kGiven && !config.initial_profile) {
    return absl::InvalidArgumentError(
        "given initialization requires an initial profile");
  }
  return absl::OkStatus();
}

absl::StatusOr<SolveResult> OgdaSolve(const PayoffMatrix& payoffs,
                                      const OgdaConfig& config) {
  if (auto status = ValidateOgdaConfig(config); !status.ok()) return status;
  SolveConfig init_config;
  init_config.init = config.init;
  init_config.initial_profile = config.initial_profile;
  absl::StatusOr<StrategyProfile> initial =
      InitialProfile(payoffs, init_config);
  if (!initial.ok()) return initial.status();

  const auto start = std::chrono::steady_clock::now();
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
  OgdaState state =
      OgdaState::Start(payoffs, *std::move(initial), config.alpha);
  double gap = Evaluate(payoffs, state.profile).duality_gap();
  SolveTrace trace;
  trace.iteration_cap = config.max_iterations;
  trace.initial_gap = gap;
  while (gap > config.delta && state.t < config.max_iterations) {
    const double step =
        config.sqrt_decay
            ? config.alpha / std::sqrt(static_cast<double>(state.t + 1))
            : config.alpha;
    OgdaState next = OgdaStep(payoffs, state, step);
    const double next_gap = Evaluate(payoffs, next.profile).duality_gap();
    IterationRecord record;
    record.t = state.t;
    record.delta_i = config.delta;
    record.rho_i = kNan;
    record.epsilon = step;
    record.v_before = gap;
    record.v_after = next_gap;
    record.gamma = kNan;
    record.row_set = SupportSize(next.profile.row);
    record.col_set = SupportSize(next.profile.col);
    trace.iterations.push_back(record);
    state = std::move(next);
    gap = next_gap;
  }
  trace.outcome =
      gap <= config.delta ? Outcome::kConverged : Outcome::kIterationCapReached;
  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return SolveResult{std::move(state.profile), std::move(trace), gap};
}

}  // namespace gapdescent
