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
#include "reconlab/glm/glm.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "gtest/gtest.h"
#include "reconlab/rng.h"
#include "support/glm_plant.h"

namespace reconlab::glm {
namespace {

using ::reconlab::testing::PlantedGlm;
using ::reconlab::testing::PlantGlm;

double MaxAbsDiff(const Vector& a, const Vector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double Norm(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

TEST(FitGlmTest, RidgeOnOrthonormalDesignMatchesDirectSolve) {
  // Orthonormal columns: X^T X = I, so (X^T X + lambda I)^{-1} X^T Y =
  // X^T Y / (1 + lambda).
  Rng rng(3);
  Eigen::MatrixXd raw(40, 6);
  for (Eigen::Index i = 0; i < raw.size(); ++i) raw.data()[i] = rng.Normal();
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(raw)
                                .householderQ() *
                            Eigen::MatrixXd::Identity(40, 6);
  GlmData data{Matrix(40, 6), Vector(40)};
  for (std::size_t r = 0; r < 40; ++r) {
    for (std::size_t c = 0; c < 6; ++c) data.x(r, c) = q(r, c);
    data.y[r] = rng.Normal();
  }
  const GlmSpec spec{Family::kRidge, 1.0, false};
  const GlmParams fit = FitGlm(data, spec);
  for (std::size_t c = 0; c < 6; ++c) {
    double xty = 0.0;
    for (std::size_t r = 0; r < 40; ++r) xty += q(r, c) * data.y[r];
    EXPECT_NEAR(fit.theta[c], xty / 2.0, 1e-10);
  }
  EXPECT_LE(fit.gradient_norm, 1e-10);
}

TEST(FitGlmTest, ZeroLabelsWithPenaltyGiveZeroParameters) {
  PlantedGlm p = PlantGlm(Family::kLinear, 4, 30, true, 1);
  std::fill(p.full.y.begin(), p.full.y.end(), 0.0);
  const GlmParams fit = FitGlm(p.full, {Family::kRidge, 0.5, true});
  for (double t : fit.theta) EXPECT_EQ(t, 0.0);
}

TEST(FitGlmTest, PenalizedLogisticOnSeparableDataConverges) {
  GlmData data{Matrix(20, 2), Vector(20)};
  for (std::size_t r = 0; r < 20; ++r) {
    data.x(r, 0) = 1.0;
    data.x(r, 1) = r < 10 ? -1.0 - 0.1 * r : 1.0 + 0.1 * r;
    data.y[r] = r < 10 ? 0.0 : 1.0;
  }
  const GlmParams fit = FitGlm(data, {Family::kLogistic, 0.1, true});
  for (double t : fit.theta) EXPECT_TRUE(std::isfinite(t));
  EXPECT_LE(Norm(ObjectiveGradient(fit.theta, data,
                                   {Family::kLogistic, 0.1, true})),
            1e-10);
  EXPECT_GT(fit.theta[1], 0.0);
}

TEST(FitGlmTest, RankDeficientDesignWithoutPenaltyIsSingular) {
  GlmData data{Matrix(10, 3), Vector(10, 1.0)};
  for (std::size_t r = 0; r < 10; ++r) {
    data.x(r, 0) = 1.0;
    data.x(r, 1) = static_cast<double>(r);
    data.x(r, 2) = 2.0 * static_cast<double>(r);
  }
  EXPECT_THROW(FitGlm(data, {Family::kLinear, 0.0, true}), NumericalError);
}

TEST(FitGlmTest, InterceptColumnIsPrependedWhenAbsent) {
  GlmData data{Matrix(3, 1), Vector{1, 2, 3}};
  data.x(0, 0) = 0.5;
  data.x(1, 0) = 1.5;
  data.x(2, 0) = 2.0;
  const GlmData prepared = PrepareDesign(data, true);
  ASSERT_EQ(prepared.x.cols, 2u);
  EXPECT_EQ(prepared.x(1, 0), 1.0);
  EXPECT_EQ(prepared.x(1, 1), 1.5);
  EXPECT_EQ(PrepareDesign(prepared, true).x.cols, 2u);
  EXPECT_EQ(FitGlm(data, {Family::kLinear, 0.0, true}).theta.size(), 2u);
}

TEST(ResidualSystemTest, OptimalityIdentity) {
  const PlantedGlm p = PlantGlm(Family::kLogistic, 6, 120, true, 4);
  const GlmSpec spec{Family::kLogistic, 0.1, true};
  const GlmParams fit = FitGlm(p.full, spec);
  const Vector residual = ResidualSystem(fit.theta, p.fixed, spec);
  // residual = -(fixed gradients + lambda theta); adding them back together
  // with the same lambda term yields grad C(theta) over fixed + target.
  GlmData target_only{Matrix(1, 6), Vector{p.target_y}};
  std::copy(p.target_x.begin(), p.target_x.end(), target_only.x.row(0).begin());
  const Vector target_grad =
      ObjectiveGradient(fit.theta, target_only, {Family::kLogistic, 0.0, true});
  Vector total(6);
  for (std::size_t j = 0; j < 6; ++j) total[j] = target_grad[j] - residual[j];
  // total double counts nothing: fixed + lambda + target.
  EXPECT_LE(MaxAbsDiff(total, ObjectiveGradient(fit.theta, p.full, spec)),
            1e-12);
  EXPECT_LE(Norm(total), 1e-10);
}

TEST(ResidualSystemTest, LinearCaseEqualsTargetGradientTerm) {
  const PlantedGlm p = PlantGlm(Family::kLinear, 5, 50, true, 5);
  const GlmSpec spec{Family::kLinear, 0.0, true};
  const GlmParams fit = FitGlm(p.full, spec);
  const Vector residual = ResidualSystem(fit.theta, p.fixed, spec);
  double pred = 0.0;
  for (std::size_t j = 0; j < 5; ++j) pred += p.target_x[j] * fit.theta[j];
  for (std::size_t j = 0; j < 5; ++j) {
    EXPECT_NEAR(residual[j], p.target_x[j] * (pred - p.target_y), 1e-8);
  }
}

TEST(ResidualSystemTest, EmptyFixedSetGivesMinusPenaltyTerm) {
  const Vector theta = {0.3, -0.2};
  const GlmData empty{Matrix(0, 2), {}};
  const Vector r = ResidualSystem(theta, empty, {Family::kRidge, 2.0, true});
  EXPECT_DOUBLE_EQ(r[0], -0.6);
  EXPECT_DOUBLE_EQ(r[1], 0.4);
  const Vector r0 = ResidualSystem(theta, empty, {Family::kLinear, 0.0, true});
  EXPECT_EQ(r0, (Vector{-0.0, 0.0}));
}

TEST(ReconstructGlmTest, LinearRegressionRoundTrip) {
  const PlantedGlm p = PlantGlm(Family::kLinear, 5, 50, true, 6);
  const GlmSpec spec{Family::kLinear, 0.0, true};
  const GlmParams fit = FitGlm(p.full, spec);
  const GlmReconstruction rec = ReconstructGlm(fit.theta, p.fixed, spec);
  EXPECT_LE(MaxAbsDiff(rec.x, p.target_x), 1e-6);
  EXPECT_NEAR(rec.y, p.target_y, 1e-6);
  EXPECT_EQ(rec.x[0], 1.0);
  EXPECT_LE(rec.optimality_residual, 1e-9);
}

TEST(ReconstructGlmTest, PenalizedLogisticRoundTrip) {
  const PlantedGlm p = PlantGlm(Family::kLogistic, 10, 200, true, 7);
  const GlmSpec spec{Family::kLogistic, 0.1, true};
  const GlmParams fit = FitGlm(p.full, spec);
  const GlmReconstruction rec = ReconstructGlm(fit.theta, p.fixed, spec);
  EXPECT_LE(MaxAbsDiff(rec.x, p.target_x), 1e-6);
  EXPECT_NEAR(rec.y, p.target_y, 1e-6);
  EXPECT_EQ(rec.x[0], 1.0);
}

TEST(ReconstructGlmTest, PropertyRoundTripAcrossFamilies) {
  struct Case {
    Family family;
    double lambda;
  };
  const Case cases[] = {{Family::kLinear, 0.0},
                        {Family::kRidge, 0.1},
                        {Family::kRidge, 1.0},
                        {Family::kLogistic, 0.0},
                        {Family::kLogistic, 0.1}};
  Rng rng(8);
  for (const Case& c : cases) {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t d = 2 + rng.UniformInt(15);
      const std::size_t n = 30 * d + rng.UniformInt(100);
      const PlantedGlm p = PlantGlm(c.family, d, n, true, rng());
      const GlmSpec spec{c.family, c.lambda, true};
      const GlmParams fit = FitGlm(p.full, spec);
      const GlmReconstruction rec = ReconstructGlm(fit.theta, p.fixed, spec);
      ASSERT_LE(MaxAbsDiff(rec.x, p.target_x), 1e-6)
          << FamilyName(c.family) << " d=" << d << " n=" << n;
      ASSERT_NEAR(rec.y, p.target_y, 1e-6);
      // Back-substituted optimality within ten times the fit tolerance.
      ASSERT_LE(rec.optimality_residual, 10 * kDefaultFitTolerance);
      // The label expression implied by the intercept equation always wins.
      ASSERT_EQ(rec.label_candidate, 0u);
    }
  }
}

TEST(ReconstructGlmTest, IndependentOfTrainingAlgorithm) {
  const PlantedGlm p = PlantGlm(Family::kRidge, 5, 50, true, 9);
  const GlmSpec spec{Family::kRidge, 1.0, true};
  const GlmParams newton = FitGlm(p.full, spec);
  const GlmParams gd = FitGlmGradientDescent(p.full, spec);
  EXPECT_GT(gd.iterations, 1u);
  const GlmReconstruction a = ReconstructGlm(newton.theta, p.fixed, spec);
  const GlmReconstruction b = ReconstructGlm(gd.theta, p.fixed, spec);
  EXPECT_LE(MaxAbsDiff(a.x, b.x), 1e-5);
  EXPECT_NEAR(a.y, b.y, 1e-5);

  const PlantedGlm q = PlantGlm(Family::kLogistic, 4, 80, true, 10);
  const GlmSpec logit{Family::kLogistic, 0.1, true};
  const GlmReconstruction c =
      ReconstructGlm(FitGlm(q.full, logit).theta, q.fixed, logit);
  const GlmReconstruction e =
      ReconstructGlm(FitGlmGradientDescent(q.full, logit).theta, q.fixed, logit);
  EXPECT_LE(MaxAbsDiff(c.x, e.x), 1e-5);
}

TEST(ReconstructGlmTest, InconsistentParametersAreRejected) {
  const PlantedGlm p = PlantGlm(Family::kLinear, 4, 40, true, 11);
  const GlmSpec spec{Family::kLinear, 0.0, true};
  // Optimum of the fixed set alone: no missing point, zero denominator.
  const GlmParams fixed_only = FitGlm(p.fixed, spec);
  EXPECT_THROW(ReconstructGlm(fixed_only.theta, p.fixed, spec), NumericalError);
  EXPECT_THROW(ReconstructGlm(fixed_only.theta, p.fixed,
                              {Family::kLinear, 0.0, false}),
               ValidationError);
}

TEST(NoInterceptTest, OneCandidateMatchesPlantedTarget) {
  const PlantedGlm p = PlantGlm(Family::kLinear, 5, 60, false, 12);
  const GlmSpec spec{Family::kLinear, 0.0, false};
  const GlmParams fit = FitGlm(p.full, spec);
  const auto cands = ReconstructLinregNoIntercept(fit.theta, p.fixed, p.target_y);
  const double best = std::min(MaxAbsDiff(cands[0], p.target_x),
                               MaxAbsDiff(cands[1], p.target_x));
  EXPECT_LE(best, 1e-6);
}

TEST(NoInterceptTest, DoubleRootCoincides) {
  // X = [1], theta = [1], Y = [0]: residual 1, q = 1, y = 2 -> disc = 0.
  const GlmData fixed{Matrix(1, 1, 1.0), Vector{0.0}};
  const auto cands = ReconstructLinregNoIntercept(Vector{1.0}, fixed, 2.0);
  EXPECT_EQ(cands[0], cands[1]);
  EXPECT_DOUBLE_EQ(cands[0][0], 1.0);
}

TEST(NoInterceptTest, FeatureRescaleRescalesCandidates) {
  const PlantedGlm p = PlantGlm(Family::kLinear, 4, 50, false, 13);
  const GlmParams fit = FitGlm(p.full, {Family::kLinear, 0.0, false});
  const double s = 3.0;
  GlmData scaled = p.fixed;
  for (double& v : scaled.x.data) v *= s;
  Vector theta = fit.theta;
  for (double& t : theta) t /= s;
  const auto base = ReconstructLinregNoIntercept(fit.theta, p.fixed, p.target_y);
  const auto rescaled = ReconstructLinregNoIntercept(theta, scaled, p.target_y);
  for (int k = 0; k < 2; ++k) {
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_NEAR(rescaled[k][j], s * base[k][j], 1e-9 * (1 + std::abs(s * base[k][j])));
    }
  }
}

TEST(NoInterceptTest, DegenerateInputsRaise) {
  const GlmData fixed{Matrix(1, 1, 1.0), Vector{1.0}};
  // Exact fit of the fixed set: X theta - Y = 0.
  EXPECT_THROW(ReconstructLinregNoIntercept(Vector{1.0}, fixed, 1.0),
               NumericalError);
  // y^2 - 4 q < 0.
  const GlmData other{Matrix(1, 1, 1.0), Vector{0.0}};
  EXPECT_THROW(ReconstructLinregNoIntercept(Vector{1.0}, other, 1.0),
               NumericalError);
}

}  // namespace
}  // namespace reconlab::glm
