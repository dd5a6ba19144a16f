// Copyright 2026 The Threadscope Authors.
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

#include "threadscope/fusion.h"

#include <gtest/gtest.h>

#include <vector>

#include "oracles.h"
#include "threadscope/errors.h"
#include "threadscope/random.h"

namespace threadscope {
namespace {

TEST(JointScoreTest, EndpointsAndMidpoint) {
  EXPECT_EQ(JointScore(0.7, 0.1, 1.0), 0.7);
  EXPECT_EQ(JointScore(0.7, 0.9, 1.0), 0.7);
  EXPECT_EQ(JointScore(0.2, 0.4, 0.0), 0.4);
  EXPECT_NEAR(JointScore(1.0, 0.5, 0.3), 0.65, 1e-15);
}

TEST(JointScoreTest, RejectsOutOfRange) {
  EXPECT_THROW(JointScore(-0.1, 0.5, 0.5), ContractError);
  EXPECT_THROW(JointScore(0.5, 1.1, 0.5), ContractError);
  EXPECT_THROW(JointScore(0.5, 0.5, 2.0), ContractError);
  EXPECT_THROW(JointScore(NAN, 0.5, 0.5), ContractError);
}

TEST(JointScoreTest, BoundedAndMonotone) {
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const double a = rng.Uniform(), b = rng.Uniform(), x = rng.Uniform();
    const double c = JointScore(a, b, x);
    EXPECT_GE(c, std::min(a, b));
    EXPECT_LE(c, std::max(a, b));
    const double a2 = std::min(1.0, a + rng.Uniform() * 0.1);
    const double b2 = std::min(1.0, b + rng.Uniform() * 0.1);
    EXPECT_GE(JointScore(a2, b, x), c);
    EXPECT_GE(JointScore(a, b2, x), c);
  }
}

TEST(ClassifyThreadTest, StrictThreshold) {
  EXPECT_TRUE(ClassifyThread(0.65, 0.5));
  EXPECT_FALSE(ClassifyThread(0.5, 0.5));
  EXPECT_FALSE(ClassifyThread(0.0, 0.0));
}

TEST(GridTest, ElevenValues) {
  const std::vector<double> grid = DefaultGrid();
  ASSERT_EQ(grid.size(), 11u);
  EXPECT_EQ(grid.front(), 0.0);
  EXPECT_EQ(grid.back(), 1.0);
  EXPECT_EQ(grid[3], 0.3);
}

std::vector<ApiRecords> PerfectARandomB(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ApiRecords> records(3);
  for (std::size_t k = 0; k < records.size(); ++k) {
    records[k].fqn = "p.T" + std::to_string(k) + ".m";
    for (int i = 0; i < 30; ++i) {
      const bool truth = rng.Bernoulli(0.5);
      records[k].threads.push_back(
          {i, truth ? 1.0 : 0.0, rng.Uniform(), truth});
    }
  }
  return records;
}

TEST(TuneTest, PerfectSyntacticScoreSelectsOne) {
  const std::vector<ApiRecords> records = PerfectARandomB(4);
  const TuneResult r = TuneWeightingFactor(records, DefaultGrid(), 0.5);
  ASSERT_EQ(r.grid_f1.size(), 11u);
  EXPECT_EQ(r.x, 1.0);
  EXPECT_EQ(r.f1, 1.0);
  for (const auto &[x, f1] : r.grid_f1) {
    EXPECT_NEAR(f1, oracle::MacroF1(records, x, 0.5), 1e-12);
  }
}

TEST(TuneTest, TiesGoToLargerX) {
  // Every thread has A = B, so every x gives the same classification.
  std::vector<ApiRecords> records = {{"p.T.m", {{1, 0.9, 0.9, true}, {2, 0.1, 0.1, true}}}};
  const TuneResult r = TuneWeightingFactor(records, DefaultGrid(), 0.5);
  EXPECT_EQ(r.x, 1.0);
  EXPECT_NEAR(r.f1, 2.0 / 3.0, 1e-12);
}

TEST(TuneTest, InteriorOptimum) {
  // Thread 1 needs x > 1/3, thread 2 needs x <= 4/7 and thread 3 needs
  // x < 4/7, so only 0.4 and 0.5 classify all three correctly.
  std::vector<ApiRecords> records = {
      {"p.T.m", {{1, 0.9, 0.3, true}, {2, 0.8, 0.1, false}, {3, 0.2, 0.9, true}}}};
  const TuneResult r = TuneWeightingFactor(records, DefaultGrid(), 0.5);
  EXPECT_EQ(r.f1, 1.0);
  EXPECT_EQ(r.x, 0.5);
  EXPECT_LT(r.grid_f1[3].second, 1.0);
  EXPECT_LT(r.grid_f1[6].second, 1.0);
}

TEST(TuneTest, MatchesExhaustiveOracleOnRandomRecords) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ApiRecords> records(1 + rng.Below(4));
    for (ApiRecords &api : records) {
      const std::size_t n = rng.Below(12);
      for (std::size_t i = 0; i < n; ++i) {
        // Coarse values make ties common.
        api.threads.push_back({static_cast<ThreadId>(i),
                               static_cast<double>(rng.Below(5)) / 4.0,
                               static_cast<double>(rng.Below(5)) / 4.0,
                               rng.Bernoulli(0.5)});
      }
    }
    const TuneResult r = TuneWeightingFactor(records, DefaultGrid(), 0.5);
    const auto [best_x, best_f1] =
        oracle::ExhaustiveBestX(records, DefaultGrid(), 0.5);
    EXPECT_NEAR(r.f1, best_f1, 1e-12);
    EXPECT_EQ(r.x, best_x);
  }
}

TEST(TuneTest, RejectsEmptyInputs) {
  std::vector<ApiRecords> records = {{"p.T.m", {{1, 1.0, 1.0, true}}}};
  EXPECT_THROW(TuneWeightingFactor(records, {}, 0.5), ContractError);
  EXPECT_THROW(TuneWeightingFactor({}, DefaultGrid(), 0.5), ContractError);
}

}  // namespace
}  // namespace threadscope
