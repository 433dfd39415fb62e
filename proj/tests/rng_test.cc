// Copyright 2026 The ReconLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "reconlab/rng.h"

#include <cmath>
#include <set>
#include <vector>

#include "gtest/gtest.h"

namespace reconlab {
namespace {

TEST(RngTest, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(RngTest, DifferentSeedsDiffer) {
  Rng a(1), b(2);
  EXPECT_NE(a(), b());
}

TEST(RngTest, SplitIgnoresParentPosition) {
  Rng a(7);
  Rng b(7);
  for (int i = 0; i < 17; ++i) b();
  Rng ca = a.Split(3), cb = b.Split(3);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(ca(), cb());
}

TEST(RngTest, SplitLabelsGiveDistinctStreams) {
  Rng root(7);
  std::set<std::uint64_t> first;
  for (std::uint64_t label = 0; label < 1000; ++label) {
    first.insert(root.Split(label)());
  }
  EXPECT_EQ(first.size(), 1000u);
  EXPECT_NE(root.Split("init")(), root.Split("noise")());
}

TEST(RngTest, UniformMomentsAndRange) {
  Rng rng(11);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.005);
}

TEST(RngTest, NormalMoments) {
  Rng rng(12);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.Normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(RngTest, UniformIntCoversRange) {
  Rng rng(5);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 7000; ++i) ++counts[rng.UniformInt(7)];
  for (int c : counts) EXPECT_GT(c, 800);
}

TEST(RngTest, DeriveSeedIsInjectiveOnSmallRange) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 10000; ++i) seeds.insert(DeriveSeed(99, i));
  EXPECT_EQ(seeds.size(), 10000u);
  EXPECT_EQ(DeriveSeed(99, 5), DeriveSeed(99, 5));
  EXPECT_NE(DeriveSeed(99, 5), DeriveSeed(98, 5));
}

}  // namespace
}  // namespace reconlab
