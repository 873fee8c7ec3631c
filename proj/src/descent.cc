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

#include "gapdescent/descent.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace gapdescent {
namespace {

constexpr int64_t kHeuristicIterationCap = 100000;
constexpr int kStallWindow = 50;
constexpr double kStallRelativeImprovement = 1e-6;
constexpr int kMaxStepHalvings = 60;

struct Line {
  double slope;
  double intercept;
};

// Abscissae in (0, 1) where the upper envelope of `lines` changes pieces.
std::vector<double> UpperEnvelopeBreakpoints(std::vector<Line> lines) {
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return a.slope < b.slope ||
           (a.slope == b.slope && a.intercept < b.intercept);
  });
  std::vector<Line> hull;
  auto cross = [](const Line& a, const Line& b) {
    return (a.intercept - b.intercept) / (b.slope - a.slope);
  };
  for (const Line& line : lines) {
    if (!hull.empty() && hull.back().slope == line.slope) hull.pop_back();
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], line) <=
                                   cross(hull[hull.size() - 2], hull.back())) {
      hull.pop_back();
    }
    hull.push_back(line);
  }
  std::vector<double> points;
  for (size_t k = 1; k < hull.size(); ++k) {
    const double e = cross(hull[k - 1], hull[k]);
    if (e > 0.0 && e < 1.0) points.push_back(e);
  }
  return points;
}

// V along the segment, from payoff vectors at both endpoints.
class SegmentGap {
 public:
  SegmentGap(const PayoffMatrix& payoffs, const StrategyProfile& profile,
             const StrategyProfile& direction)
      : row_from_(RowPayoffs(payoffs, profile.col)),
        row_to_(RowPayoffs(payoffs, direction.col)),
        col_from_(ColPayoffs(payoffs, profile.row)),
        col_to_(ColPayoffs(payoffs, direction.row)) {}

  double operator()(double e) const {
    const double best_row = ((1.0 - e) * row_from_ + e * row_to_).maxCoeff();
    const double best_col = ((1.0 - e) * col_from_ + e * col_to_).minCoeff();
    return best_row - best_col;
  }

  std::vector<double> Breakpoints() const {
    std::vector<Line> rows(row_from_.size());
    for (Eigen::Index i = 0; i < row_from_.size(); ++i) {
      rows[i] = {row_to_[i] - row_from_[i], row_from_[i]};
    }
    std::vector<Line> cols(col_from_.size());
    for (Eigen::Index j = 0; j < col_from_.size(); ++j) {
      cols[j] = {-(col_to_[j] - col_from_[j]), -col_from_[j]};
    }
    std::vector<double> points = UpperEnvelopeBreakpoints(std::move(rows));
    const std::vector<double> more = UpperEnvelopeBreakpoints(std::move(cols));
    points.insert(points.end(), more.begin(), more.end());
    points.push_back(0.0);
    points.push_back(1.0);
    std::sort(points.begin(), points.end());
    return points;
  }

 private:
  Eigen::VectorXd row_from_;
  Eigen::VectorXd row_to_;
  Eigen::VectorXd col_from_;
  Eigen::VectorXd col_to_;
};

absl::StatusOr<DirectionResult> DirectionOverSets(const PayoffMatrix& payoffs,
                                                  const BestResponseSet& rows,
                                                  const BestResponseSet& cols,
                                                  double lp_tolerance,
                                                  bool decomposed) {
  return decomposed
             ? DirectionOverSetsDecomposed(payoffs, rows, cols, lp_tolerance)
             : DirectionOverSetsJoint(payoffs, rows, cols, lp_tolerance);
}

// Shared machinery of all four variants: the descent loop for one epoch,
// with the index-set rule supplied by the caller.
class DescentRun {
 public:
  using SetRule = std::function<std::pair<BestResponseSet, BestResponseSet>(
      const ProfileEvaluation&)>;

  DescentRun(const PayoffMatrix& payoffs, const SolveConfig& config,
             const StepObserver& observer, StrategyProfile initial)
      : payoffs_(payoffs),
        config_(config),
        observer_(observer),
        profile_(std::move(initial)),
        cap_(EffectiveIterationCap(config)),
        heuristic_(!IsTheoryBacked(config)),
        start_(std::chrono::steady_clock::now()) {
    gap_ = Evaluate(payoffs_, profile_).duality_gap();
    trace_.iteration_cap = cap_;
    trace_.initial_gap = gap_;
  }

  // Runs while V > delta_i. Returns false when the cap or the stall
  // detector stopped the run. With record_spread the trace shows the payoff
  // spread of the chosen sets in place of rho_i.
  absl::StatusOr<bool> RunEpoch(int epoch, double delta_i, double rho_i,
                                const SetRule& sets,
                                bool record_spread = false) {
    while (gap_ > delta_i) {
      if (t_ >= cap_) return false;
      if (heuristic_ && Stalled()) {
        trace_.stalled = true;
        return false;
      }
      const ProfileEvaluation eval = Evaluate(payoffs_, profile_);
      auto [rows, cols] = sets(eval);
      absl::StatusOr<DirectionResult> direction = DirectionOverSets(
          payoffs_, rows, cols, config_.lp_tolerance, config_.decomposed);
      if (!direction.ok()) return direction.status();

      double epsilon =
          ChooseEpsilon(payoffs_, profile_, direction->direction,
                        config_.epsilon_policy, rho_i, epsilon_state_);
      StrategyProfile next =
          StrategyProfile::Mix(profile_, direction->direction, epsilon);
      double next_gap = Evaluate(payoffs_, next).duality_gap();
      if (config_.reject_increases &&
          config_.epsilon_policy.kind == EpsilonPolicyKind::kTernaryThenDecay) {
        int halvings = 0;
        while (next_gap > gap_ && epsilon > 0.0) {
          epsilon = ++halvings > kMaxStepHalvings ? 0.0 : epsilon / 2.0;
          next = StrategyProfile::Mix(profile_, direction->direction, epsilon);
          next_gap = Evaluate(payoffs_, next).duality_gap();
        }
      }

      IterationRecord record;
      record.t = t_;
      record.epoch = epoch;
      record.delta_i = delta_i;
      record.rho_i = record_spread ? std::max(rows.rho, cols.rho) : rho_i;
      record.epsilon = epsilon;
      record.v_before = gap_;
      record.v_after = next_gap;
      record.gamma = direction->gamma;
      record.row_set = direction->row_set_size();
      record.col_set = direction->col_set_size();
      trace_.iterations.push_back(record);
      if (observer_) {
        observer_(StepContext{profile_, next, *direction, record});
      }
      profile_ = std::move(next);
      gap_ = next_gap;
      ++t_;
    }
    return true;
  }

  SolveResult Finish(bool completed) {
    trace_.outcome = completed && gap_ <= config_.delta
                         ? Outcome::kConverged
                         : Outcome::kIterationCapReached;
    trace_.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    return SolveResult{std::move(profile_), std::move(trace_), gap_};
  }

  const PayoffMatrix& payoffs() const { return payoffs_; }

 private:
  bool Stalled() const {
    const auto& its = trace_.iterations;
    if (its.size() < static_cast<size_t>(kStallWindow)) return false;
    const double earlier = its[its.size() - kStallWindow].v_before;
    const double now = its.back().v_after;
    return earlier - now < kStallRelativeImprovement * earlier;
  }

  const PayoffMatrix& payoffs_;
  const SolveConfig& config_;
  const StepObserver& observer_;
  StrategyProfile profile_;
  double gap_ = 0.0;
  int64_t t_ = 0;
  const int64_t cap_;
  const bool heuristic_;
  EpsilonState epsilon_state_;
  SolveTrace trace_;
  std::chrono::steady_clock::time_point start_;
};

DescentRun::SetRule RhoRule(double rho) {
  return [rho](const ProfileEvaluation& eval) {
    return std::make_pair(
        BestResponsesFromPayoffs(eval.row_payoffs, Player::kRow, rho),
        BestResponsesFromPayoffs(eval.col_payoffs, Player::kCol, rho));
  };
}

absl::Status CheckVariant(const SolveConfig& config, Variant expected) {
  if (config.variant != expected) {
    return absl::InvalidArgumentError(
        absl::StrCat("config variant is ", VariantName(config.variant),
                     ", expected ", VariantName(expected)));
  }
  return ValidateSolveConfig(config);
}

// Decaying schedules: delta_i = 2^-i until delta_i <= delta.
absl::StatusOr<SolveResult> SolveDecaying(const PayoffMatrix& payoffs,
                                          const SolveConfig& config,
                                          const StepObserver& observer,
                                          bool decay_rho) {
  absl::StatusOr<StrategyProfile> initial = InitialProfile(payoffs, config);
  if (!initial.ok()) return initial.status();
  DescentRun run(payoffs, config, observer, *std::move(initial));
  double delta_i = 1.0;
  for (int epoch = 1;; ++epoch) {
    delta_i /= 2.0;
    const double rho_i =
        decay_rho ? std::min(1.0, config.rho_scale * std::sqrt(delta_i))
                  : config.rho;
    absl::StatusOr<bool> completed =
        run.RunEpoch(epoch, delta_i, rho_i, RhoRule(rho_i));
    if (!completed.ok()) return completed.status();
    if (!*completed) return run.Finish(false);
    if (delta_i <= config.delta) break;
  }
  return run.Finish(true);
}

// Returns the indices of the k largest values of `key`, ties by index.
std::vector<int> TopIndices(const Eigen::VectorXd& key, int k) {
  std::vector<int> order(key.size());
  std::iota(order.begin(), order.end(), 0);
  k = std::min<int>(k, static_cast<int>(order.size()));
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [&key](int a, int b) {
                      return key[a] > key[b] || (key[a] == key[b] && a < b);
                    });
  order.resize(k);
  return order;
}

std::pair<BestResponseSet, BestResponseSet> TopKFromEvaluation(
    const ProfileEvaluation& eval, int k) {
  BestResponseSet rows;
  rows.player = Player::kRow;
  rows.indices = TopIndices(eval.row_payoffs, k);
  BestResponseSet cols;
  cols.player = Player::kCol;
  cols.indices = TopIndices(-eval.col_payoffs, k);
  double row_low = eval.best_row_payoff;
  for (int i : rows.indices) row_low = std::min(row_low, eval.row_payoffs[i]);
  double col_high = eval.best_col_payoff;
  for (int j : cols.indices) col_high = std::max(col_high, eval.col_payoffs[j]);
  rows.rho = eval.best_row_payoff - row_low;
  cols.rho = col_high - eval.best_col_payoff;
  std::sort(rows.indices.begin(), rows.indices.end());
  std::sort(cols.indices.begin(), cols.indices.end());
  return {std::move(rows), std::move(cols)};
}

}  // namespace

std::string EpsilonPolicyName(const EpsilonPolicy& policy) {
  switch (policy.kind) {
    case EpsilonPolicyKind::kFixedHalfRho:
      return "half_rho";
    case EpsilonPolicyKind::kConstant:
      return absl::StrFormat("constant:%.17g", policy.value);
    case EpsilonPolicyKind::kTernaryThenDecay:
      return "ternary_decay";
    case EpsilonPolicyKind::kExactLineMin:
      return "exact_line";
  }
  return "unknown";
}

absl::StatusOr<EpsilonPolicy> ParseEpsilonPolicy(const std::string& text) {
  const std::string lower = absl::AsciiStrToLower(text);
  if (lower == "half_rho") return EpsilonPolicy::FixedHalfRho();
  if (lower == "ternary_decay") return EpsilonPolicy::TernaryThenDecay();
  if (lower == "exact_line") return EpsilonPolicy::ExactLineMin();
  constexpr absl::string_view kConstant = "constant:";
  if (absl::StartsWith(lower, kConstant)) {
    double v = 0.0;
    if (absl::SimpleAtod(lower.substr(kConstant.size()), &v)) {
      return EpsilonPolicy::Constant(v);
    }
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown step policy '", text,
                   "' (half_rho, constant:<v>, ternary_decay, exact_line)"));
}

std::string VariantName(Variant variant) {
  switch (variant) {
    case Variant::kPlain:
      return "plain";
    case Variant::kDecayDelta:
      return "decay_delta";
    case Variant::kDecayDeltaRho:
      return "decay_delta_rho";
    case Variant::kFixedSupport:
      return "fixed_support";
  }
  return "unknown";
}

absl::StatusOr<Variant> ParseVariant(const std::string& text) {
  const std::string lower = absl::AsciiStrToLower(text);
  for (Variant v : {Variant::kPlain, Variant::kDecayDelta,
                    Variant::kDecayDeltaRho, Variant::kFixedSupport}) {
    if (lower == VariantName(v)) return v;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown variant '", text,
                   "' (plain, decay_delta, decay_delta_rho, fixed_support)"));
}

std::string InitKindName(InitKind init) {
  switch (init) {
    case InitKind::kPureFirst:
      return "pure";
    case InitKind::kUniform:
      return "uniform";
    case InitKind::kGiven:
      return "given";
  }
  return "unknown";
}

absl::StatusOr<InitKind> ParseInitKind(const std::string& text) {
  const std::string lower = absl::AsciiStrToLower(text);
  if (lower == "pure") return InitKind::kPureFirst;
  if (lower == "uniform") return InitKind::kUniform;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown initialization '", text, "' (pure, uniform)"));
}

std::string OutcomeName(Outcome outcome) {
  return outcome == Outcome::kConverged ? "converged" : "iteration_cap";
}

absl::Status ValidateSolveConfig(const SolveConfig& config) {
  if (!(config.delta > 0.0 && config.delta <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta = ", config.delta, " must lie in (0,1]"));
  }
  if (!(config.rho > 0.0 && config.rho <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("rho = ", config.rho, " must lie in (0,1]"));
  }
  if (config.support_size < 1) {
    return absl::InvalidArgumentError("support size k must be at least 1");
  }
  if (!(config.lp_tolerance >= 0.0)) {
    return absl::InvalidArgumentError("LP tolerance must be non-negative");
  }
  if (config.max_iterations < 0) {
    return absl::InvalidArgumentError("max iterations must be positive");
  }
  if (!(config.rho_scale > 0.0)) {
    return absl::InvalidArgumentError("rho scale must be positive");
  }
  if (config.epsilon_policy.kind == EpsilonPolicyKind::kConstant &&
      !(config.epsilon_policy.value > 0.0 &&
        config.epsilon_policy.value <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "constant step ", config.epsilon_policy.value, " must lie in (0,1]"));
  }
  if (config.init == InitKind::kGiven && !config.initial_profile) {
    return absl::InvalidArgumentError(
        "given initialization requires an initial profile");
  }
  return absl::OkStatus();
}

bool IsTheoryBacked(const SolveConfig& config) {
  if (config.variant == Variant::kFixedSupport) return false;
  switch (config.epsilon_policy.kind) {
    case EpsilonPolicyKind::kFixedHalfRho:
    case EpsilonPolicyKind::kExactLineMin:
      return true;
    case EpsilonPolicyKind::kConstant: {
      // The constant must respect the smallest rho the schedule uses.
      double rho = config.rho;
      if (config.variant == Variant::kDecayDeltaRho) {
        rho = config.rho_scale * std::sqrt(config.delta / 2.0);
      }
      return config.epsilon_policy.value <= rho / 2.0;
    }
    case EpsilonPolicyKind::kTernaryThenDecay:
      return false;
  }
  return false;
}

std::optional<int64_t> TheoreticalIterationBound(const SolveConfig& config) {
  if (!IsTheoryBacked(config)) return std::nullopt;
  const double delta = config.delta;
  switch (config.variant) {
    case Variant::kPlain:
      return static_cast<int64_t>(
          std::floor(4.0 / (config.rho * delta) * std::log(2.0 / delta) + 1.0));
    case Variant::kDecayDelta:
      return static_cast<int64_t>(std::ceil(4.0 / config.rho + 1.0) *
                                  std::ceil(std::log2(2.0 / delta)));
    case Variant::kDecayDeltaRho:
      return static_cast<int64_t>(
          std::floor(14.0 / (config.rho_scale * std::sqrt(delta)) +
                     std::ceil(std::log2(2.0 / delta)) + 1.0));
    case Variant::kFixedSupport:
      return std::nullopt;
  }
  return std::nullopt;
}

int64_t EffectiveIterationCap(const SolveConfig& config) {
  if (config.max_iterations > 0) return config.max_iterations;
  const std::optional<int64_t> bound = TheoreticalIterationBound(config);
  return bound ? 10 * std::max<int64_t>(*bound, 1) : kHeuristicIterationCap;
}

absl::StatusOr<StepResult> DescentStep(const PayoffMatrix& payoffs,
                                       const StrategyProfile& profile,
                                       double rho, double epsilon,
                                       double lp_tolerance, bool decomposed) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon = ", epsilon, " must lie in [0,1]"));
  }
  absl::StatusOr<DirectionResult> direction =
      decomposed ? FindDirectionDecomposed(payoffs, profile, rho, lp_tolerance)
                 : FindDirection(payoffs, profile, rho, lp_tolerance);
  if (!direction.ok()) return direction.status();
  StepResult step;
  step.v_before = Evaluate(payoffs, profile).duality_gap();
  step.profile = StrategyProfile::Mix(profile, direction->direction, epsilon);
  step.v_after = Evaluate(payoffs, step.profile).duality_gap();
  step.direction = *std::move(direction);
  return step;
}

double ExactLineMinimizer(const PayoffMatrix& payoffs,
                          const StrategyProfile& profile,
                          const StrategyProfile& direction) {
  const SegmentGap gap(payoffs, profile, direction);
  double best_e = 0.0;
  double best_v = std::numeric_limits<double>::infinity();
  for (double e : gap.Breakpoints()) {
    const double v = gap(e);
    if (v <= best_v) {
      best_v = v;
      best_e = e;
    }
  }
  return best_e;
}

double TernarySearchMinimizer(const PayoffMatrix& payoffs,
                              const StrategyProfile& profile,
                              const StrategyProfile& direction, double width) {
  const SegmentGap gap(payoffs, profile, direction);
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > width) {
    const double a = lo + (hi - lo) / 3.0;
    const double b = hi - (hi - lo) / 3.0;
    if (gap(a) <= gap(b)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  return 0.5 * (lo + hi);
}

double ChooseEpsilon(const PayoffMatrix& payoffs,
                     const StrategyProfile& profile,
                     const StrategyProfile& direction,
                     const EpsilonPolicy& policy, double rho,
                     EpsilonState& state) {
  switch (policy.kind) {
    case EpsilonPolicyKind::kFixedHalfRho:
      return rho / 2.0;
    case EpsilonPolicyKind::kConstant:
      return policy.value;
    case EpsilonPolicyKind::kExactLineMin:
      return ExactLineMinimizer(payoffs, profile, direction);
    case EpsilonPolicyKind::kTernaryThenDecay: {
      if (Evaluate(payoffs, profile).duality_gap() > kTernaryThreshold) {
        return TernarySearchMinimizer(payoffs, profile, direction,
                                      kTernaryWidth);
      }
      const double e =
          kDecayStart * std::pow(kDecayFactor, state.decay_calls++);
      return std::max(e, kDecayFloor);
    }
  }
  return rho / 2.0;
}

std::pair<BestResponseSet, BestResponseSet> TopKSets(
    const PayoffMatrix& payoffs, const StrategyProfile& profile, int k) {
  return TopKFromEvaluation(Evaluate(payoffs, profile), k);
}

absl::StatusOr<StrategyProfile> InitialProfile(const PayoffMatrix& payoffs,
                                               const SolveConfig& config) {
  switch (config.init) {
    case InitKind::kPureFirst:
      return StrategyProfile{MixedStrategy::Pure(payoffs.rows(), 0),
                             MixedStrategy::Pure(payoffs.cols(), 0)};
    case InitKind::kUniform:
      return StrategyProfile{MixedStrategy::Uniform(payoffs.rows()),
                             MixedStrategy::Uniform(payoffs.cols())};
    case InitKind::kGiven:
      if (!config.initial_profile) {
        return absl::InvalidArgumentError("missing initial profile");
      }
      if (auto status = CheckDimensions(payoffs, *config.initial_profile);
          !status.ok()) {
        return status;
      }
      return *config.initial_profile;
  }
  return absl::InvalidArgumentError("unknown initialization");
}

absl::StatusOr<SolveResult> SolvePlain(const PayoffMatrix& payoffs,
                                       const SolveConfig& config,
                                       const StepObserver& observer) {
  if (auto status = CheckVariant(config, Variant::kPlain); !status.ok()) {
    return status;
  }
  absl::StatusOr<StrategyProfile> initial = InitialProfile(payoffs, config);
  if (!initial.ok()) return initial.status();
  DescentRun run(payoffs, config, observer, *std::move(initial));
  absl::StatusOr<bool> completed =
      run.RunEpoch(0, config.delta, config.rho, RhoRule(config.rho));
  if (!completed.ok()) return completed.status();
  return run.Finish(*completed);
}

absl::StatusOr<SolveResult> SolveDecayDelta(const PayoffMatrix& payoffs,
                                            const SolveConfig& config,
                                            const StepObserver& observer) {
  if (auto status = CheckVariant(config, Variant::kDecayDelta); !status.ok()) {
    return status;
  }
  return SolveDecaying(payoffs, config, observer, /*decay_rho=*/false);
}

absl::StatusOr<SolveResult> SolveDecayDeltaRho(const PayoffMatrix& payoffs,
                                               const SolveConfig& config,
                                               const StepObserver& observer) {
  if (auto status = CheckVariant(config, Variant::kDecayDeltaRho);
      !status.ok()) {
    return status;
  }
  return SolveDecaying(payoffs, config, observer, /*decay_rho=*/true);
}

absl::StatusOr<SolveResult> SolveFixedSupport(const PayoffMatrix& payoffs,
                                              const SolveConfig& config,
                                              const StepObserver& observer) {
  if (auto status = CheckVariant(config, Variant::kFixedSupport);
      !status.ok()) {
    return status;
  }
  absl::StatusOr<StrategyProfile> initial = InitialProfile(payoffs, config);
  if (!initial.ok()) return initial.status();
  DescentRun run(payoffs, config, observer, *std::move(initial));
  const int k = config.support_size;
  absl::StatusOr<bool> completed = run.RunEpoch(
      0, config.delta, config.rho,
      [k](const ProfileEvaluation& eval) {
        return TopKFromEvaluation(eval, k);
      },
      /*record_spread=*/true);
  if (!completed.ok()) return completed.status();
  return run.Finish(*completed);
}

absl::StatusOr<SolveResult> Solve(const PayoffMatrix& payoffs,
                                  const SolveConfig& config,
                                  const StepObserver& observer) {
  switch (config.variant) {
    case Variant::kPlain:
      return SolvePlain(payoffs, config, observer);
    case Variant::kDecayDelta:
      return SolveDecayDelta(payoffs, config, observer);
    case Variant::kDecayDeltaRho:
      return SolveDecayDeltaRho(payoffs, config, observer);
    case Variant::kFixedSupport:
      return SolveFixedSupport(payoffs, config, observer);
  }
  return absl::InvalidArgumentError("unknown variant");
}

}  // namespace gapdescent
