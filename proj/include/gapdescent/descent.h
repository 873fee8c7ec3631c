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

#ifndef GAPDESCENT_DESCENT_H_
#define GAPDESCENT_DESCENT_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "gapdescent/find_direction.h"
#include "gapdescent/game.h"

namespace gapdescent {

enum class EpsilonPolicyKind {
  kFixedHalfRho,
  kConstant,
  kTernaryThenDecay,
  kExactLineMin,
};

struct EpsilonPolicy {
  EpsilonPolicyKind kind = EpsilonPolicyKind::kFixedHalfRho;
  double value = 0.0;  // kConstant only

  static EpsilonPolicy FixedHalfRho() { return {}; }
  static EpsilonPolicy Constant(double v) {
    return {EpsilonPolicyKind::kConstant, v};
  }
  static EpsilonPolicy TernaryThenDecay() {
    return {EpsilonPolicyKind::kTernaryThenDecay, 0.0};
  }
  static EpsilonPolicy ExactLineMin() {
    return {EpsilonPolicyKind::kExactLineMin, 0.0};
  }
};

std::string EpsilonPolicyName(const EpsilonPolicy& policy);
absl::StatusOr<EpsilonPolicy> ParseEpsilonPolicy(const std::string& text);

// Step-size schedule parameters for kTernaryThenDecay.
inline constexpr double kTernaryThreshold = 0.1;
inline constexpr double kTernaryWidth = 1e-3;
inline constexpr double kDecayStart = 0.2;
inline constexpr double kDecayFactor = 0.9;
inline constexpr double kDecayFloor = 1e-6;

// Mutable per-solve state of the step-size policy.
struct EpsilonState {
  int decay_calls = 0;
};

enum class Variant { kPlain, kDecayDelta, kDecayDeltaRho, kFixedSupport };

std::string VariantName(Variant variant);
absl::StatusOr<Variant> ParseVariant(const std::string& text);

enum class InitKind { kPureFirst, kUniform, kGiven };

std::string InitKindName(InitKind init);
absl::StatusOr<InitKind> ParseInitKind(const std::string& text);

struct SolveConfig {
  double delta = 0.01;
  double rho = 0.1;  // kPlain and kDecayDelta
  EpsilonPolicy epsilon_policy;
  Variant variant = Variant::kPlain;
  int support_size = 100;  // kFixedSupport
  double lp_tolerance = 1e-8;
  // 0 selects the default cap: 10x the iteration bound for theory-backed
  // runs, 100000 for heuristic ones.
  int64_t max_iterations = 0;
  InitKind init = InitKind::kPureFirst;
  std::optional<StrategyProfile> initial_profile;  // kGiven
  // kDecayDeltaRho uses rho_i = rho_scale * sqrt(delta_i).
  double rho_scale = 1.0;
  // Two small LPs instead of the joint one.
  bool decomposed = true;
  // kTernaryThenDecay only: a step that would increase V is retried with
  // half the step, up to 60 times, and then skipped. Turning it off runs the
  // step-size heuristic unguarded, which lets V rise on some iterations.
  bool reject_increases = true;
};

absl::Status ValidateSolveConfig(const SolveConfig& config);

// Theory-backed runs use a step no larger than rho/2 (or an exact line
// minimization, which can only improve on it) with rho-best-response sets.
bool IsTheoryBacked(const SolveConfig& config);

// Iteration bound implied by the convergence analysis of the variant, or
// nullopt for heuristic configurations:
//   kPlain:         (4 / (rho delta)) ln(2 / delta) + 1
//   kDecayDelta:    ceil(4 / rho + 1) * ceil(log2(2 / delta))
//   kDecayDeltaRho: 14 / sqrt(delta) + ceil(log2(2 / delta)) + 1
std::optional<int64_t> TheoreticalIterationBound(const SolveConfig& config);

int64_t EffectiveIterationCap(const SolveConfig& config);

struct IterationRecord {
  int64_t t = 0;
  int epoch = 0;
  double delta_i = 0.0;
  double rho_i = 0.0;
  double epsilon = 0.0;
  double v_before = 0.0;
  double v_after = 0.0;
  double gamma = 0.0;
  int row_set = 0;
  int col_set = 0;
};

enum class Outcome { kConverged, kIterationCapReached };

std::string OutcomeName(Outcome outcome);

struct SolveTrace {
  std::vector<IterationRecord> iterations;
  Outcome outcome = Outcome::kConverged;
  // Set when the heuristic stall detector ended the run.
  bool stalled = false;
  int64_t iteration_cap = 0;
  double initial_gap = 0.0;
  double wall_seconds = 0.0;  // informational only
};

struct SolveResult {
  StrategyProfile profile;
  SolveTrace trace;
  double final_gap = 0.0;
};

// Everything one iteration saw; handed to the observer after each step.
struct StepContext {
  const StrategyProfile& before;
  const StrategyProfile& after;
  const DirectionResult& direction;
  const IterationRecord& record;
};

using StepObserver = std::function<void(const StepContext&)>;

struct StepResult {
  StrategyProfile profile;
  DirectionResult direction;
  double v_before = 0.0;
  double v_after = 0.0;
};

// One update z <- (1 - epsilon) z + epsilon z' with z' from the
// rho-best-response direction LP. epsilon in [0, 1], rho in (0, 1].
absl::StatusOr<StepResult> DescentStep(const PayoffMatrix& payoffs,
                                       const StrategyProfile& profile,
                                       double rho, double epsilon,
                                       double lp_tolerance,
                                       bool decomposed = true);

// Global minimizer over [0, 1] of e -> V((1 - e) z + e d), which is convex
// and piecewise linear. Ties go to the largest minimizer.
double ExactLineMinimizer(const PayoffMatrix& payoffs,
                          const StrategyProfile& profile,
                          const StrategyProfile& direction);

// Ternary search for the same minimizer down to bracket width `width`.
double TernarySearchMinimizer(const PayoffMatrix& payoffs,
                              const StrategyProfile& profile,
                              const StrategyProfile& direction, double width);

// Step size for the current iteration. `rho` is the slack of the current
// epoch; `state` carries the decay counter of kTernaryThenDecay.
double ChooseEpsilon(const PayoffMatrix& payoffs,
                     const StrategyProfile& profile,
                     const StrategyProfile& direction,
                     const EpsilonPolicy& policy, double rho,
                     EpsilonState& state);

// Index sets of the k highest entries of Ry and the k lowest of R'x, ties
// by ascending index. `rho` of each set is the payoff spread it covers.
std::pair<BestResponseSet, BestResponseSet> TopKSets(
    const PayoffMatrix& payoffs, const StrategyProfile& profile, int k);

absl::StatusOr<StrategyProfile> InitialProfile(const PayoffMatrix& payoffs,
                                               const SolveConfig& config);

// Each variant checks config.variant and returns InvalidArgumentError on a
// mismatch. Hitting the iteration cap is an outcome, not an error.
absl::StatusOr<SolveResult> SolvePlain(const PayoffMatrix& payoffs,
                                       const SolveConfig& config,
                                       const StepObserver& observer = {});
absl::StatusOr<SolveResult> SolveDecayDelta(const PayoffMatrix& payoffs,
                                            const SolveConfig& config,
                                            const StepObserver& observer = {});
absl::StatusOr<SolveResult> SolveDecayDeltaRho(
    const PayoffMatrix& payoffs, const SolveConfig& config,
    const StepObserver& observer = {});
absl::StatusOr<SolveResult> SolveFixedSupport(
    const PayoffMatrix& payoffs, const SolveConfig& config,
    const StepObserver& observer = {});

// Dispatches on config.variant.
absl::StatusOr<SolveResult> Solve(const PayoffMatrix& payoffs,
                                  const SolveConfig& config,
                                  const StepObserver& observer = {});

}  // namespace gapdescent

#endif  // GAPDESCENT_DESCENT_H_
