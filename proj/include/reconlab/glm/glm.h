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
#ifndef RECONLAB_GLM_GLM_H_
#define RECONLAB_GLM_GLM_H_

#include <array>
#include <cstddef>
#include <string_view>

#include "reconlab/common.h"

namespace reconlab::glm {

// Canonical-link families. Linear and Ridge share the identity link and
// differ only in whether a penalty is expected; Logistic uses the sigmoid
// link with labels in {0, 1}.
enum class Family { kLinear, kRidge, kLogistic };

std::string_view FamilyName(Family f);
Family ParseFamily(std::string_view name);

struct GlmSpec {
  Family family = Family::kLinear;
  double lambda = 0.0;
  bool intercept = true;
};

// Design matrix (rows = points) and real labels.
struct GlmData {
  Matrix x;
  Vector y;
};

// g^{-1}, the mean function.
double InverseLink(Family f, double eta);
// b with b' = g^{-1}.
double Cumulant(Family f, double eta);

// When `intercept` is set and the first column is not identically 1, returns
// a copy with a leading column of ones; otherwise returns the input.
GlmData PrepareDesign(const GlmData& data, bool intercept);

// Objective sum_i [b(<x_i, theta>) - y_i <x_i, theta>] + (lambda / 2) |theta|^2
// and its gradient sum_i x_i (g^{-1}(<x_i, theta>) - y_i) + lambda theta. The
// design must already be prepared.
double Objective(const Vector& theta, const GlmData& data, const GlmSpec& spec);
Vector ObjectiveGradient(const Vector& theta, const GlmData& data,
                         const GlmSpec& spec);

struct GlmParams {
  Vector theta;
  double gradient_norm = 0.0;
  std::size_t iterations = 0;
};

inline constexpr double kDefaultFitTolerance = 1e-10;
inline constexpr std::size_t kNewtonIterationCap = 100;

// Linear/Ridge by the normal equations (plus refinement steps), Logistic by
// damped Newton. Prepares the design first. Throws NumericalError when the
// system is singular or Newton does not reach `tol` within the cap.
GlmParams FitGlm(const GlmData& data, const GlmSpec& spec,
                 double tol = kDefaultFitTolerance);

// Plain fixed-step gradient descent to the same tolerance; slow, kept as an
// independent training route.
GlmParams FitGlmGradientDescent(const GlmData& data, const GlmSpec& spec,
                                double tol = kDefaultFitTolerance,
                                std::size_t max_iterations = 2'000'000);

// -sum_{z' in fixed} grad c(z', theta) - lambda theta: the gradient
// contribution the missing point must supply for theta to be optimal.
Vector ResidualSystem(const Vector& theta, const GlmData& fixed,
                      const GlmSpec& spec);

struct GlmReconstruction {
  Vector x;  // x[0] == 1 when an intercept is used
  double y = 0.0;
  // |grad C(theta)| with the reconstruction substituted back.
  double optimality_residual = 0.0;
  // Which label expression won the back-substitution check.
  std::size_t label_candidate = 0;
};

inline constexpr double kDenominatorFloor = 1e-12;

// Closed-form reconstruction of the single unknown training point of a GLM
// fitted with an intercept. Throws NumericalError on a vanishing denominator
// or when no label candidate restores optimality to within 10 * tol.
GlmReconstruction ReconstructGlm(const Vector& theta, const GlmData& fixed,
                                 const GlmSpec& spec,
                                 double tol = kDefaultFitTolerance);

// Least-squares regression without intercept, label of the target known.
// Returns both roots of the quadratic in the scale of X^T (X theta - Y).
// Throws NumericalError for a vanishing residual or a negative discriminant.
std::array<Vector, 2> ReconstructLinregNoIntercept(const Vector& theta,
                                                   const GlmData& fixed,
                                                   double y);

}  // namespace reconlab::glm

#endif  // RECONLAB_GLM_GLM_H_
