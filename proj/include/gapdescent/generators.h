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

#ifndef GAPDESCENT_GENERATORS_H_
#define GAPDESCENT_GENERATORS_H_

#include <cstdint>
#include <string>

#include "Eigen/Core"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "gapdescent/game.h"

namespace gapdescent {

// Random games are drawn from std::mt19937_64 seeded by a SplitMix64 hash of
// (seed, family, rank, m, n). Uniform doubles take the top 53 bits of each
// draw and normals use Box-Muller, so matrices are identical across
// platforms and standard libraries.
inline constexpr char kGeneratorName[] = "mt19937_64+splitmix64";

enum class GameFamily { kUniform, kGaussian, kLowRank };

std::string GameFamilyName(GameFamily family);
absl::StatusOr<GameFamily> ParseGameFamily(const std::string& text);

struct GameSpec {
  GameFamily family = GameFamily::kUniform;
  int rank = 0;  // kLowRank only
  int rows = 1;
  int cols = 1;
  uint64_t seed = 0;
};

// rows, cols >= 1 and 1 <= rank <= min(rows, cols) for kLowRank.
absl::Status ValidateGameSpec(const GameSpec& spec);

// "uniform", "gaussian" or "lowrank<r>", e.g. "lowrank10".
std::string GameSpecLabel(const GameSpec& spec);

// Payoffs in [0,1]:
//   kUniform:  i.i.d. uniform entries.
//   kGaussian: i.i.d. standard normals, affinely rescaled to [0,1].
//   kLowRank:  U V' with U (m x r), V (n x r) i.i.d. uniform, rescaled to
//              [0,1]. The shift can raise the rank to r + 1.
absl::StatusOr<PayoffMatrix> Generate(const GameSpec& spec);

// The factor product U V' of a kLowRank spec before rescaling.
absl::StatusOr<Eigen::MatrixXd> LowRankProduct(const GameSpec& spec);

}  // namespace gapdescent

#endif  // GAPDESCENT_GENERATORS_H_
