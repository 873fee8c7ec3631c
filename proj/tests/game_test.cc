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
#include <cmath>
#include <limits>
#include <random>

#include "gapdescent/find_direction.h"
#include "gtest/gtest.h"
#include "testing/oracles.h"

namespace gapdescent {
namespace {

using ::gapdescent::testing::GapByLoops;
using ::gapdescent::testing::RandomProfile;
using ::gapdescent::testing::RandomSparseProfile;
using ::gapdescent::testing::UniformMatrix;

PayoffMatrix Identity2() {
  return *PayoffMatrix::Create(Eigen::Matrix2d::Identity());
}

StrategyProfile Profile(std::initializer_list<double> x,
                        std::initializer_list<double> y) {
  Eigen::VectorXd xv(x.size());
  Eigen::VectorXd yv(y.size());
  std::copy(x.begin(), x.end(), xv.data());
  std::copy(y.begin(), y.end(), yv.data());
  return {*MixedStrategy::Create(xv), *MixedStrategy::Create(yv)};
}

TEST(NormalizePayoffsTest, RescalesTwoValuedMatrix) {
  Eigen::Matrix2d raw;
  raw << 2, 0, 0, 2;
  absl::StatusOr<PayoffMatrix> r = NormalizePayoffs(raw);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->entries(), Eigen::Matrix2d::Identity());
}

TEST(NormalizePayoffsTest, ConstantMatrixBecomesHalf) {
  absl::StatusOr<PayoffMatrix> r =
      NormalizePayoffs(Eigen::Matrix2d::Constant(5.0));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->entries(), Eigen::Matrix2d::Constant(0.5));
  // Every profile of a constant game is an exact equilibrium.
  EXPECT_EQ(*DualityGap(*r, Profile({1, 0}, {0.3, 0.7})), 0.0);
}

TEST(NormalizePayoffsTest, NormalizedInputIsUnchanged) {
  absl::StatusOr<PayoffMatrix> r =
      NormalizePayoffs(Eigen::Matrix2d::Identity());
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->entries(), Eigen::Matrix2d::Identity());
}

TEST(NormalizePayoffsTest, RejectsNonFinite) {
  Eigen::Matrix2d raw = Eigen::Matrix2d::Zero();
  raw(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(NormalizePayoffs(raw).status().code(),
            absl::StatusCode::kInvalidArgument);
  raw(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_FALSE(NormalizePayoffs(raw).ok());
}

TEST(PayoffMatrixTest, CreateValidatesRangeAndShape) {
  EXPECT_FALSE(PayoffMatrix::Create(Eigen::Matrix2d::Constant(1.5)).ok());
  EXPECT_FALSE(PayoffMatrix::Create(Eigen::Matrix2d::Constant(-0.1)).ok());
  EXPECT_FALSE(PayoffMatrix::Create(Eigen::MatrixXd(0, 3)).ok());
  absl::StatusOr<PayoffMatrix> rect =
      PayoffMatrix::Create(Eigen::MatrixXd::Constant(2, 5, 0.25));
  ASSERT_TRUE(rect.ok());
  EXPECT_EQ(rect->rows(), 2);
  EXPECT_EQ(rect->cols(), 5);
}

TEST(MixedStrategyTest, CreateEnforcesSimplex) {
  EXPECT_FALSE(MixedStrategy::Create(Eigen::Vector2d(0.5, 0.4)).ok());
  EXPECT_FALSE(MixedStrategy::Create(Eigen::Vector2d(1.5, -0.5)).ok());
  EXPECT_FALSE(MixedStrategy::Create(Eigen::VectorXd()).ok());
  EXPECT_FALSE(
      MixedStrategy::Create(
          Eigen::Vector2d(std::numeric_limits<double>::quiet_NaN(), 1.0))
          .ok());
  // Small drift is renormalized.
  absl::StatusOr<MixedStrategy> s =
      MixedStrategy::Create(Eigen::Vector2d(0.5, 0.5 + 5e-7));
  ASSERT_TRUE(s.ok());
  EXPECT_NEAR(s->probs().sum(), 1.0, 1e-15);
  // Rounding below zero is clipped.
  s = MixedStrategy::Create(Eigen::Vector3d(-1e-12, 0.5, 0.5));
  ASSERT_TRUE(s.ok());
  EXPECT_EQ((*s)[0], 0.0);
}

TEST(MixedStrategyTest, PureUniformAndMix) {
  MixedStrategy e1 = MixedStrategy::Pure(3, 1);
  EXPECT_EQ(e1.probs(), Eigen::Vector3d(0, 1, 0));
  MixedStrategy u = MixedStrategy::Uniform(4);
  EXPECT_EQ(u.probs(), Eigen::Vector4d::Constant(0.25));
  MixedStrategy m = MixedStrategy::Mix(MixedStrategy::Pure(2, 0),
                                       MixedStrategy::Pure(2, 1), 0.25);
  EXPECT_DOUBLE_EQ(m[0], 0.75);
  EXPECT_DOUBLE_EQ(m[1], 0.25);
}

TEST(DualityGapTest, HandExamples) {
  const PayoffMatrix r = Identity2();
  EXPECT_DOUBLE_EQ(*DualityGap(r, Profile({0.5, 0.5}, {0.5, 0.5})), 0.0);
  EXPECT_DOUBLE_EQ(*DualityGap(r, Profile({1, 0}, {1, 0})), 1.0);
}

TEST(DualityGapTest, ZeroAtLpEquilibrium) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    absl::StatusOr<PayoffMatrix> r =
        PayoffMatrix::Create(UniformMatrix(rng, 8, 11));
    ASSERT_TRUE(r.ok());
    absl::StatusOr<StrategyProfile> ne = FullGameLp(*r, 0.0);
    ASSERT_TRUE(ne.ok()) << ne.status();
    EXPECT_NEAR(*DualityGap(*r, *ne), 0.0, 1e-8);
    EXPECT_NEAR(*RowRegret(*r, *ne), 0.0, 1e-8);
    EXPECT_NEAR(*ColRegret(*r, *ne), 0.0, 1e-8);
  }
}

TEST(DualityGapTest, DimensionMismatchIsInvalid) {
  const PayoffMatrix r = Identity2();
  StrategyProfile z = Profile({1, 0, 0}, {1, 0});
  EXPECT_EQ(DualityGap(r, z).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(RowRegret(r, z).ok());
  EXPECT_FALSE(ColRegret(r, z).ok());
  EXPECT_FALSE(IsDeltaNash(r, z, 0.1).ok());
  EXPECT_FALSE(
      BestResponses(r, Player::kRow, MixedStrategy::Pure(3, 0), 0.0).ok());
}

TEST(RegretTest, HandExamples) {
  const PayoffMatrix r = Identity2();
  const StrategyProfile z = Profile({1, 0}, {1, 0});
  EXPECT_DOUBLE_EQ(*RowRegret(r, z), 0.0);
  EXPECT_DOUBLE_EQ(*ColRegret(r, z), 1.0);
}

TEST(BestResponsesTest, HandExamples) {
  const PayoffMatrix r = Identity2();
  const MixedStrategy e1 = MixedStrategy::Pure(2, 0);
  EXPECT_EQ(BestResponses(r, Player::kRow, e1, 0.0)->indices,
            std::vector<int>({0}));
  EXPECT_EQ(BestResponses(r, Player::kRow, e1, 1.0)->indices,
            std::vector<int>({0, 1}));
  EXPECT_EQ(BestResponses(r, Player::kCol, e1, 0.0)->indices,
            std::vector<int>({1}));
}

TEST(BestResponsesTest, TiesAreIncluded) {
  const PayoffMatrix r = Identity2();
  const MixedStrategy u = MixedStrategy::Uniform(2);
  EXPECT_EQ(BestResponses(r, Player::kRow, u, 0.0)->indices,
            std::vector<int>({0, 1}));
  EXPECT_EQ(BestResponses(r, Player::kCol, u, 0.0)->indices,
            std::vector<int>({0, 1}));
}

TEST(DeltaNashTest, HandExamples) {
  const PayoffMatrix r = Identity2();
  EXPECT_TRUE(*IsDeltaNash(r, Profile({0.5, 0.5}, {0.5, 0.5}), 0.0));
  EXPECT_FALSE(*IsDeltaNash(r, Profile({1, 0}, {1, 0}), 0.5));
}

// Sampled properties on random games.

TEST(GamePropertyTest, ConvexityOfGap) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    if (trial % 50 == 0) rng.seed(trial);
    PayoffMatrix r = *PayoffMatrix::Create(UniformMatrix(rng, 20, 20));
    const StrategyProfile z1 = RandomProfile(rng, 20, 20);
    const StrategyProfile z2 = RandomSparseProfile(rng, 20, 20);
    const double p = unit(rng);
    const double mixed = *DualityGap(r, StrategyProfile::Mix(z2, z1, p));
    const double chord = p * *DualityGap(r, z1) + (1 - p) * *DualityGap(r, z2);
    if (mixed > chord + 1e-9) ++violations;
  }
  EXPECT_EQ(violations, 0);
}

TEST(GamePropertyTest, RangeAndDecomposition) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 12);
    const int n = 1 + static_cast<int>(rng() % 12);
    const Eigen::MatrixXd raw = UniformMatrix(rng, m, n);
    const PayoffMatrix r = *PayoffMatrix::Create(raw);
    const StrategyProfile z = trial % 2 == 0 ? RandomProfile(rng, m, n)
                                             : RandomSparseProfile(rng, m, n);
    const double v = *DualityGap(r, z);
    const double fr = *RowRegret(r, z);
    const double fc = *ColRegret(r, z);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 2.0);
    EXPECT_GE(fr, 0.0);
    EXPECT_LE(fr, 1.0);
    EXPECT_GE(fc, 0.0);
    EXPECT_LE(fc, 1.0);
    EXPECT_NEAR(v, fr + fc, 1e-12);
    EXPECT_NEAR(v, GapByLoops(raw, z.row.probs(), z.col.probs()), 1e-12);
  }
}

TEST(GamePropertyTest, BestResponsesMonotoneInRho) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const PayoffMatrix r = *PayoffMatrix::Create(UniformMatrix(rng, 15, 15));
    const StrategyProfile z = RandomProfile(rng, 15, 15);
    double rho1 = unit(rng);
    double rho2 = unit(rng);
    if (rho1 > rho2) std::swap(rho1, rho2);
    for (Player player : {Player::kRow, Player::kCol}) {
      const MixedStrategy& opponent = player == Player::kRow ? z.col : z.row;
      BestResponseSet small = *BestResponses(r, player, opponent, rho1);
      BestResponseSet large = *BestResponses(r, player, opponent, rho2);
      ASSERT_FALSE(small.indices.empty());
      EXPECT_TRUE(std::includes(large.indices.begin(), large.indices.end(),
                                small.indices.begin(), small.indices.end()));
      EXPECT_TRUE(std::is_sorted(large.indices.begin(), large.indices.end()));
    }
    // rho = 1 admits every pure strategy.
    EXPECT_EQ(BestResponses(r, Player::kRow, z.col, 1.0)->size(), 15);
    EXPECT_EQ(BestResponses(r, Player::kCol, z.row, 1.0)->size(), 15);
  }
}

TEST(GamePropertyTest, BestResponsesInvariantUnderScaling) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> wide(-7.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::MatrixXd raw(9, 7);
    for (int i = 0; i < raw.size(); ++i) raw.data()[i] = wide(rng);
    const double scale = raw.maxCoeff() - raw.minCoeff();
    const PayoffMatrix normalized = *NormalizePayoffs(raw);
    const StrategyProfile z = RandomProfile(rng, 9, 7);
    // Raw best responses by brute force.
    const Eigen::VectorXd ry = raw * z.col.probs();
    const Eigen::VectorXd rx = raw.transpose() * z.row.probs();
    const double rho = 0.05;
    std::vector<int> raw_rows;
    std::vector<int> raw_cols;
    for (int i = 0; i < 9; ++i) {
      if (ry[i] >= ry.maxCoeff() - rho * scale - 1e-12 * scale) {
        raw_rows.push_back(i);
      }
    }
    for (int j = 0; j < 7; ++j) {
      if (rx[j] <= rx.minCoeff() + rho * scale + 1e-12 * scale) {
        raw_cols.push_back(j);
      }
    }
    EXPECT_EQ(BestResponses(normalized, Player::kRow, z.col, rho)->indices,
              raw_rows);
    EXPECT_EQ(BestResponses(normalized, Player::kCol, z.row, rho)->indices,
              raw_cols);
  }
}

TEST(GamePropertyTest, SmallGapImpliesDeltaNash) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const PayoffMatrix r = *PayoffMatrix::Create(UniformMatrix(rng, 6, 6));
    const StrategyProfile z = RandomProfile(rng, 6, 6);
    const double v = *DualityGap(r, z);
    EXPECT_TRUE(*IsDeltaNash(r, z, v));
    EXPECT_TRUE(*IsDeltaNash(r, z, std::min(1.0, v + 0.01)));
    // Each regret is a sharp threshold.
    const double worst = std::max(*RowRegret(r, z), *ColRegret(r, z));
    if (worst > 1e-6) EXPECT_FALSE(*IsDeltaNash(r, z, worst - 1e-6));
  }
}

}  // namespace
}  // namespace gapdescent
