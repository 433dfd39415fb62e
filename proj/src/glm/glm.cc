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
#include <limits>
#include <string>

#include <Eigen/Dense>

namespace reconlab::glm {
namespace {

using EigenMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenMatrix> AsEigen(const Matrix& m) {
  return {m.data.data(), static_cast<Eigen::Index>(m.rows),
          static_cast<Eigen::Index>(m.cols)};
}

Eigen::Map<const Eigen::VectorXd> AsEigen(const Vector& v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

Vector ToVector(const Eigen::VectorXd& v) { return {v.begin(), v.end()}; }

double Norm(const Vector& v) { return AsEigen(v).norm(); }

double Dot(std::span<const double> a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void CheckShapes(const Vector& theta, const GlmData& data) {
  Require(data.x.rows == data.y.size(), "design rows and labels differ");
  Require(data.x.cols == theta.size() || data.x.rows == 0,
          "parameter length " + std::to_string(theta.size()) +
              " does not match design width " + std::to_string(data.x.cols));
}

}  // namespace

std::string_view FamilyName(Family f) {
  switch (f) {
    case Family::kLinear: return "linear";
    case Family::kRidge: return "ridge";
    case Family::kLogistic: return "logistic";
  }
  return "unknown";
}

Family ParseFamily(std::string_view name) {
  for (Family f : {Family::kLinear, Family::kRidge, Family::kLogistic}) {
    if (FamilyName(f) == name) return f;
  }
  throw ValidationError("unknown GLM family '" + std::string(name) + "'");
}

double InverseLink(Family f, double eta) {
  if (f != Family::kLogistic) return eta;
  if (eta >= 0) return 1.0 / (1.0 + std::exp(-eta));
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

double Cumulant(Family f, double eta) {
  if (f != Family::kLogistic) return 0.5 * eta * eta;
  return eta > 0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta));
}

GlmData PrepareDesign(const GlmData& data, bool intercept) {
  if (!intercept) return data;
  bool has_ones = data.x.cols > 0;
  for (std::size_t r = 0; r < data.x.rows && has_ones; ++r) {
    has_ones = data.x(r, 0) == 1.0;
  }
  if (has_ones) return data;
  GlmData out{Matrix(data.x.rows, data.x.cols + 1), data.y};
  for (std::size_t r = 0; r < data.x.rows; ++r) {
    out.x(r, 0) = 1.0;
    std::copy(data.x.row(r).begin(), data.x.row(r).end(),
              out.x.row(r).begin() + 1);
  }
  return out;
}

double Objective(const Vector& theta, const GlmData& data,
                 const GlmSpec& spec) {
  CheckShapes(theta, data);
  double c = 0.0;
  for (std::size_t r = 0; r < data.x.rows; ++r) {
    const double eta = Dot(data.x.row(r), theta);
    c += Cumulant(spec.family, eta) - data.y[r] * eta;
  }
  return c + 0.5 * spec.lambda * AsEigen(theta).squaredNorm();
}

Vector ObjectiveGradient(const Vector& theta, const GlmData& data,
                         const GlmSpec& spec) {
  CheckShapes(theta, data);
  Vector g(theta.size(), 0.0);
  for (std::size_t r = 0; r < data.x.rows; ++r) {
    const auto xr = data.x.row(r);
    const double resid = InverseLink(spec.family, Dot(xr, theta)) - data.y[r];
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += xr[j] * resid;
  }
  for (std::size_t j = 0; j < g.size(); ++j) g[j] += spec.lambda * theta[j];
  return g;
}

namespace {

EigenMatrix Hessian(const Vector& theta, const GlmData& data,
                    const GlmSpec& spec) {
  const auto x = AsEigen(data.x);
  Eigen::VectorXd w(static_cast<Eigen::Index>(data.x.rows));
  for (std::size_t r = 0; r < data.x.rows; ++r) {
    if (spec.family == Family::kLogistic) {
      const double p = InverseLink(spec.family, Dot(data.x.row(r), theta));
      w[static_cast<Eigen::Index>(r)] = p * (1.0 - p);
    } else {
      w[static_cast<Eigen::Index>(r)] = 1.0;
    }
  }
  EigenMatrix h = x.transpose() * w.asDiagonal() * x;
  h.diagonal().array() += spec.lambda;
  return h;
}

// Solves h * step = g, rejecting numerically singular systems.
Vector SolveSpd(const EigenMatrix& h, const Vector& g) {
  Eigen::LDLT<EigenMatrix> ldlt(h);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.rcond() < 1e-14) {
    throw NumericalError(
        "singular GLM system: the design is rank-deficient and lambda is 0");
  }
  return ToVector(ldlt.solve(AsEigen(g)));
}

}  // namespace

GlmParams FitGlm(const GlmData& raw, const GlmSpec& spec, double tol) {
  Require(spec.lambda >= 0, "lambda must be non-negative");
  const GlmData data = PrepareDesign(raw, spec.intercept);
  Require(data.x.rows == data.y.size(), "design rows and labels differ");
  if (spec.family == Family::kLogistic) {
    for (double y : data.y) {
      Require(y == 0.0 || y == 1.0, "logistic labels must be 0 or 1");
    }
  }
  GlmParams fit;
  fit.theta.assign(data.x.cols, 0.0);
  Vector g = ObjectiveGradient(fit.theta, data, spec);
  double c = Objective(fit.theta, data, spec);
  for (fit.iterations = 0; fit.iterations < kNewtonIterationCap;
       ++fit.iterations) {
    fit.gradient_norm = Norm(g);
    if (fit.gradient_norm <= tol) return fit;
    const Vector step = SolveSpd(Hessian(fit.theta, data, spec), g);
    // Damped Newton: halve until the objective does not increase beyond
    // rounding. Quadratic families accept the full step.
    double t = 1.0;
    Vector next(fit.theta.size());
    double c_next = c;
    for (int halvings = 0; halvings < 60; ++halvings, t *= 0.5) {
      for (std::size_t j = 0; j < next.size(); ++j) {
        next[j] = fit.theta[j] - t * step[j];
      }
      c_next = Objective(next, data, spec);
      if (c_next <= c + 1e-12 * (1.0 + std::abs(c))) break;
    }
    fit.theta = std::move(next);
    c = c_next;
    g = ObjectiveGradient(fit.theta, data, spec);
  }
  fit.gradient_norm = Norm(g);
  if (fit.gradient_norm <= tol) return fit;
  throw NumericalError("GLM fit did not reach gradient norm " +
                       std::to_string(tol) + " within " +
                       std::to_string(kNewtonIterationCap) +
                       " iterations (last " +
                       std::to_string(fit.gradient_norm) + ")");
}

GlmParams FitGlmGradientDescent(const GlmData& raw, const GlmSpec& spec,
                                double tol, std::size_t max_iterations) {
  const GlmData data = PrepareDesign(raw, spec.intercept);
  const auto x = AsEigen(data.x);
  const EigenMatrix gram = x.transpose() * x;
  const double top =
      Eigen::SelfAdjointEigenSolver<EigenMatrix>(gram).eigenvalues().maxCoeff();
  const double curvature =
      (spec.family == Family::kLogistic ? 0.25 : 1.0) * top + spec.lambda;
  const double step = 1.0 / curvature;
  GlmParams fit;
  fit.theta.assign(data.x.cols, 0.0);
  for (fit.iterations = 0; fit.iterations < max_iterations; ++fit.iterations) {
    const Vector g = ObjectiveGradient(fit.theta, data, spec);
    fit.gradient_norm = Norm(g);
    if (fit.gradient_norm <= tol) return fit;
    for (std::size_t j = 0; j < g.size(); ++j) fit.theta[j] -= step * g[j];
  }
  throw NumericalError("gradient descent did not converge");
}

Vector ResidualSystem(const Vector& theta, const GlmData& fixed,
                      const GlmSpec& spec) {
  Vector r = ObjectiveGradient(theta, fixed, spec);
  for (double& v : r) v = -v;
  return r;
}

GlmReconstruction ReconstructGlm(const Vector& theta, const GlmData& raw_fixed,
                                 const GlmSpec& spec, double tol) {
  Require(spec.intercept,
          "closed-form reconstruction requires an intercept; use the "
          "no-intercept attack instead");
  const GlmData fixed = PrepareDesign(raw_fixed, true);
  CheckShapes(theta, fixed);
  Require(!theta.empty(), "empty parameter vector");

  // X^T B + lambda theta, where B = g^{-1}(X theta) - Y over the fixed set.
  const Vector known = ObjectiveGradient(theta, fixed, spec);
  const double denom = known[0];
  if (std::abs(denom) < kDenominatorFloor) {
    throw NumericalError(
        "degenerate reconstruction: intercept coordinate of the fixed-set "
        "gradient vanishes");
  }
  GlmReconstruction best;
  best.x.resize(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) best.x[j] = known[j] / denom;
  best.x[0] = 1.0;

  const double mean = InverseLink(spec.family, Dot(best.x, theta));
  double intercept_part = 0.0;
  for (std::size_t r = 0; r < fixed.x.rows; ++r) {
    intercept_part +=
        InverseLink(spec.family, Dot(fixed.x.row(r), theta)) - fixed.y[r];
  }
  // Label expressions: the one implied by the intercept equation, its sign
  // flip, and lambda * (X_1^T B) * theta_1.
  const double candidates[] = {
      mean + denom,
      mean - denom,
      mean + spec.lambda * intercept_part * theta[0],
  };
  best.optimality_residual = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < std::size(candidates); ++c) {
    const double y = candidates[c];
    Vector g = known;
    const double resid = mean - y;
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += best.x[j] * resid;
    const double norm = Norm(g);
    if (norm < best.optimality_residual) {
      best.optimality_residual = norm;
      best.y = y;
      best.label_candidate = c;
    }
  }
  if (!(best.optimality_residual <= 10 * tol)) {
    throw NumericalError(
        "no label candidate restores optimality; theta is not an exact "
        "optimum for the fixed set plus one point");
  }
  return best;
}

std::array<Vector, 2> ReconstructLinregNoIntercept(const Vector& theta,
                                                   const GlmData& fixed,
                                                   double y) {
  CheckShapes(theta, fixed);
  const auto x = AsEigen(fixed.x);
  const Eigen::VectorXd fitted = x * AsEigen(theta);
  const Eigen::VectorXd resid = fitted - AsEigen(fixed.y);
  if (resid.norm() == 0.0) {
    throw NumericalError(
        "degenerate case: the fixed set is fitted exactly, X theta - Y = 0");
  }
  const Eigen::VectorXd direction = x.transpose() * resid;
  const double q = resid.dot(fitted);
  if (std::abs(q) < kDenominatorFloor) {
    throw NumericalError("degenerate case: (X theta - Y)^T X theta vanishes");
  }
  const double disc = y * y - 4.0 * q;
  if (disc < 0) throw NumericalError("negative discriminant");
  const double root = std::sqrt(disc);
  std::array<Vector, 2> out;
  const double scales[2] = {(y + root) / (2.0 * q), (y - root) / (2.0 * q)};
  for (int k = 0; k < 2; ++k) out[k] = ToVector(direction * scales[k]);
  return out;
}

}  // namespace reconlab::glm
