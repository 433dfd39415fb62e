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
#include "reconlab/dp/accounting.h"

#include <cmath>

#include "gtest/gtest.h"
#include "reconlab/common.h"

namespace reconlab::dp {
namespace {

TEST(AccountDpGdTest, FormulaAndScaling) {
  // Add/remove, C = 1, sigma = 1: Delta = 1, rho = 1 / 2.
  EXPECT_DOUBLE_EQ(AccountDpGd(1, 1.0, 1.0, Adjacency::kAddRemove), 0.5);
  const double one = AccountDpGd(7, 0.5, 1.3, Adjacency::kReplace);
  EXPECT_DOUBLE_EQ(AccountDpGd(14, 0.5, 1.3, Adjacency::kReplace), 2 * one);
  EXPECT_DOUBLE_EQ(AccountDpGd(7, 0.5, 1.3, Adjacency::kReplace) /
                       AccountDpGd(7, 0.5, 1.3, Adjacency::kAddRemove),
                   4.0);
  // Quadratic in 1/sigma, independent of C.
  EXPECT_NEAR(AccountDpGd(7, 0.5, 2.6, Adjacency::kReplace), one / 4, 1e-15);
  EXPECT_DOUBLE_EQ(AccountDpGd(7, 3.0, 1.3, Adjacency::kReplace), one);
}

TEST(AccountDpGdTest, ZeroNoiseIsRejected) {
  EXPECT_THROW(AccountDpGd(10, 1.0, 0.0, Adjacency::kReplace), ValidationError);
  EXPECT_THROW(AccountDpGd(10, 0.0, 1.0, Adjacency::kReplace), ValidationError);
}

TEST(ConversionTest, ZcdpToRdp) {
  EXPECT_EQ(ZcdpToRdp(0.0, 3.0), 0.0);
  EXPECT_DOUBLE_EQ(ZcdpToRdp(0.5, 2.0), 1.0);
  EXPECT_LT(ZcdpToRdp(0.5, 2.0), ZcdpToRdp(0.5, 2.5));
  EXPECT_THROW(ZcdpToRdp(0.5, 1.0), ValidationError);
}

TEST(ConversionTest, ZcdpToApproxDp) {
  EXPECT_EQ(ZcdpToApproxDp(0.0, 1e-5), 0.0);
  EXPECT_NEAR(ZcdpToApproxDp(1.0, std::exp(-1.0)), 3.0, 1e-15);
  EXPECT_GT(ZcdpToApproxDp(0.3, 1e-6), ZcdpToApproxDp(0.3, 1e-5));
  EXPECT_THROW(ZcdpToApproxDp(1.0, 0.0), ValidationError);
  EXPECT_THROW(ZcdpToApproxDp(1.0, 1.0), ValidationError);
}

TEST(ConversionTest, EpsilonDecreasesInNoise) {
  double previous = INFINITY;
  for (double sigma = 0.1; sigma < 50; sigma *= 1.3) {
    const double eps =
        ZcdpToApproxDp(AccountDpGd(50, 1.0, sigma, Adjacency::kReplace), 1e-5);
    EXPECT_LT(eps, previous);
    previous = eps;
  }
}

TEST(CalibrateNoiseTest, RoundTrip) {
  for (double eps : {0.1, 1.0, 10.0, 100.0, 1000.0}) {
    for (std::size_t steps : {1u, 50u, 1000u}) {
      for (Adjacency adj : {Adjacency::kReplace, Adjacency::kAddRemove}) {
        const double sigma = CalibrateNoise(eps, 1e-5, steps, 1.0, adj);
        const double back =
            ZcdpToApproxDp(AccountDpGd(steps, 1.0, sigma, adj), 1e-5);
        EXPECT_LE(back, eps);
        EXPECT_NEAR(back, eps, 1e-6 * eps);
      }
    }
  }
}

TEST(CalibrateNoiseTest, MoreStepsNeedMoreNoise) {
  EXPECT_LT(CalibrateNoise(5.0, 1e-5, 10, 1.0, Adjacency::kReplace),
            CalibrateNoise(5.0, 1e-5, 100, 1.0, Adjacency::kReplace));
}

TEST(CalibrateNoiseTest, PinnedFixture) {
  // Closed-form inverse: sqrt(rho) = sqrt(L + eps) - sqrt(L), L = ln(1/delta);
  // rho = 2 T / sigma^2 under replace adjacency with C = 1.
  const double l = std::log(1e5);
  const double root = std::sqrt(l + 10.0) - std::sqrt(l);
  const double oracle = std::sqrt(200.0 / (root * root));
  const double sigma = CalibrateNoise(10.0, 1e-5, 100, 1.0, Adjacency::kReplace);
  EXPECT_NEAR(sigma, oracle, 2e-9 * oracle);
  EXPECT_NEAR(sigma, 11.357935255257047, 1e-7);
}

TEST(CalibrateNoiseTest, InvalidTargets) {
  EXPECT_THROW(CalibrateNoise(0.0, 1e-5, 10, 1.0, Adjacency::kReplace),
               ValidationError);
  EXPECT_THROW(CalibrateNoise(INFINITY, 1e-5, 10, 1.0, Adjacency::kReplace),
               ValidationError);
}

}  // namespace
}  // namespace reconlab::dp
