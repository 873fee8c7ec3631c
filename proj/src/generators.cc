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

#include "gapdescent/generators.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"

namespace gapdescent {
namespace {

uint64_t SplitMix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 StreamFor(const GameSpec& spec) {
  uint64_t state = spec.seed;
  uint64_t key = SplitMix64(state);
  for (uint64_t part :
       {static_cast<uint64_t>(spec.family), static_cast<uint64_t>(spec.rank),
        static_cast<uint64_t>(spec.rows), static_cast<uint64_t>(spec.cols)}) {
    state ^= part + key;
    key = SplitMix64(state);
  }
  return std::mt19937_64(key);
}

double UniformDouble(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

class NormalSource {
 public:
  explicit NormalSource(std::mt19937_64& rng) : rng_(rng) {}

  double Next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - UniformDouble(rng_);  // (0, 1]
    const double u2 = UniformDouble(rng_);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64& rng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

Eigen::MatrixXd UniformEntries(std::mt19937_64& rng, int rows, int cols) {
  Eigen::MatrixXd out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out(i, j) = UniformDouble(rng);
  }
  return out;
}

}  // namespace

std::string GameFamilyName(GameFamily family) {
  switch (family) {
    case GameFamily::kUniform:
      return "uniform";
    case GameFamily::kGaussian:
      return "gaussian";
    case GameFamily::kLowRank:
      return "lowrank";
  }
  return "unknown";
}

absl::StatusOr<GameFamily> ParseGameFamily(const std::string& text) {
  const std::string lower = absl::AsciiStrToLower(text);
  for (GameFamily f :
       {GameFamily::kUniform, GameFamily::kGaussian, GameFamily::kLowRank}) {
    if (lower == GameFamilyName(f)) return f;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown game family '", text, "' (uniform, gaussian, lowrank)"));
}

absl::Status ValidateGameSpec(const GameSpec& spec) {
  if (spec.rows < 1 || spec.cols < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "game size must be positive, got ", spec.rows, "x", spec.cols));
  }
  if (spec.family == GameFamily::kLowRank &&
      (spec.rank < 1 || spec.rank > std::min(spec.rows, spec.cols))) {
    return absl::InvalidArgumentError(
        absl::StrCat("rank ", spec.rank, " must lie in [1, ",
                     std::min(spec.rows, spec.cols), "]"));
  }
  return absl::OkStatus();
}

std::string GameSpecLabel(const GameSpec& spec) {
  if (spec.family == GameFamily::kLowRank) {
    return absl::StrCat("lowrank", spec.rank);
  }
  return GameFamilyName(spec.family);
}

absl::StatusOr<Eigen::MatrixXd> LowRankProduct(const GameSpec& spec) {
  if (spec.family != GameFamily::kLowRank) {
    return absl::InvalidArgumentError("spec is not low-rank");
  }
  if (auto status = ValidateGameSpec(spec); !status.ok()) return status;
  std::mt19937_64 rng = StreamFor(spec);
  const Eigen::MatrixXd u = UniformEntries(rng, spec.rows, spec.rank);
  const Eigen::MatrixXd v = UniformEntries(rng, spec.cols, spec.rank);
  return Eigen::MatrixXd(u * v.transpose());
}

absl::StatusOr<PayoffMatrix> Generate(const GameSpec& spec) {
  if (auto status = ValidateGameSpec(spec); !status.ok()) return status;
  switch (spec.family) {
    case GameFamily::kUniform: {
      std::mt19937_64 rng = StreamFor(spec);
      return PayoffMatrix::Create(UniformEntries(rng, spec.rows, spec.cols));
    }
    case GameFamily::kGaussian: {
      std::mt19937_64 rng = StreamFor(spec);
      NormalSource normal(rng);
      Eigen::MatrixXd raw(spec.rows, spec.cols);
      for (int i = 0; i < spec.rows; ++i) {
        for (int j = 0; j < spec.cols; ++j) raw(i, j) = normal.Next();
      }
      return NormalizePayoffs(raw);
    }
    case GameFamily::kLowRank: {
      absl::StatusOr<Eigen::MatrixXd> product = LowRankProduct(spec);
      if (!product.ok()) return product.status();
      return NormalizePayoffs(*product);
    }
  }
  return absl::InvalidArgumentError("unknown game family");
}

}  // namespace gapdescent
