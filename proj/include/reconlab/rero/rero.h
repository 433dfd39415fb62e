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
#ifndef RECONLAB_RERO_RERO_H_
#define RECONLAB_RERO_RERO_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "reconlab/common.h"
#include "reconlab/rng.h"

namespace reconlab::rero {

enum class BoundSource { kThm2, kCor1, kCor2, kProp1, kProp2 };

std::string_view BoundSourceName(BoundSource s);

// An (eta, gamma) reconstruction-robustness guarantee together with the
// baseline error and privacy level it was derived from. `alpha` is only
// meaningful for kThm2; `privacy` is epsilon for kThm2/kCor1 and rho for
// kCor2. Prop sources carry whichever currency was supplied.
struct ReRoBound {
  double eta = 0.0;
  double kappa = 0.0;
  BoundSource source = BoundSource::kCor1;
  double alpha = 0.0;
  double privacy = 0.0;
  double gamma = 0.0;
};

enum class ErrorFn { kL2, kZeroOne };

double Error(ErrorFn fn, std::span<const double> a, std::span<const double> b);

// Baseline errors.

// Ball of radius eta inside the unit ball: kappa = eta^d. For eta >= 1 the
// ball covers the support; returns 1 and sets *degenerate.
double KappaUniformBall(double eta, std::size_t d, bool* degenerate = nullptr);

// Chernoff bound exp((d/2)(1 - q + ln q)), q = eta^2 / (sigma^2 d), on the
// prior mass of the eta-ball around the centre of N(w, sigma^2 I_d). Returns 1
// when q >= 1.
double KappaGaussianBound(double eta, double sigma, std::size_t d);

// Exact mass of that ball: P[chi^2_d <= eta^2 / sigma^2].
double KappaGaussianCenter(double eta, double sigma, std::size_t d);

double KappaTwoPoint(double p);

struct FinitePrior {
  std::vector<Vector> points;
  Vector masses;

  void Validate() const;
  std::size_t dim() const { return points.empty() ? 0 : points[0].size(); }
};

FinitePrior TwoPointPrior(double p, const Vector& z, const Vector& z_prime);

// Exact sup over `candidates` of prior mass within eta.
double KappaFinite(const FinitePrior& prior, ErrorFn fn, double eta,
                   std::span<const Vector> candidates);

using Sampler = std::function<Vector(Rng&)>;

Sampler UniformBallSampler(std::size_t d);
Sampler GaussianSampler(const Vector& center, double sigma);
Sampler FiniteSampler(const FinitePrior& prior);

// Monte-Carlo rate with a two-sided Wilson interval.
struct RateEstimate {
  std::size_t successes = 0;
  std::size_t trials = 0;
  double rate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  // Half the interval width; the unit in which soundness slack is measured.
  double half_width() const { return 0.5 * (upper - lower); }
};

inline constexpr double kZ99 = 2.5758293035489004;

RateEstimate WilsonInterval(std::size_t successes, std::size_t trials,
                            double z = kZ99);

// Max over candidates of the empirical Pr[l(Z, c) <= eta]; the interval is
// that of the maximizing candidate.
RateEstimate KappaMonteCarlo(const Sampler& prior, ErrorFn fn, double eta,
                             std::span<const Vector> candidates,
                             std::size_t samples, std::uint64_t seed);

// DP to ReRo.

ReRoBound RdpToRero(double alpha, double epsilon, double kappa, double eta);
ReRoBound PureDpToRero(double epsilon, double kappa, double eta);
ReRoBound ZcdpToRero(double rho, double kappa, double eta);

// ReRo against the two-point prior with p = 1/(e^eps + 1) implies
// (eps, delta)-DP with this delta.
double ReroToDp(double epsilon, double gamma);

struct Privacy {
  enum class Kind { kPureDp, kZcdp };
  Kind kind = Kind::kPureDp;
  double value = 0.0;
};

// Uniform prior on the unit ball in R^d.
ReRoBound Prop1Gamma(std::size_t d, double eta, Privacy privacy);
// Gaussian prior N(w, sigma^2 I_d); requires sigma >= 2 eta / sqrt(d).
ReRoBound Prop2Gamma(std::size_t d, double eta, double sigma, Privacy privacy);

// Attacks and empirical checks.

// Exact MAP reconstruction: argmax over candidates of the posterior mass of
// the eta-ball, given log p(theta | z_i) for every support point. Candidates
// default to the support. Ties go to the lowest index.
Vector MapAttackFinite(const FinitePrior& prior,
                       std::span<const double> log_likelihood, ErrorFn fn,
                       double eta, std::span<const Vector> candidates = {});

// Maps the unknown record to a release; the fixed records are captured by
// the callable. Must be safe to call concurrently with distinct Rngs.
using Mechanism = std::function<Vector(const Vector& z, Rng& rng)>;
using Attack = std::function<Vector(const Vector& release)>;

// Monte-Carlo estimate of Pr[l(Z, R(M(D- u {Z}))) <= eta]. Trial t uses
// Rng(DeriveSeed(seed, t)), so serial and parallel runs agree exactly.
RateEstimate EmpiricalRero(const Mechanism& mechanism, const Sampler& prior,
                           const Attack& attack, ErrorFn fn, double eta,
                           std::size_t trials, std::uint64_t seed,
                           Execution execution = Execution::kParallel);

}  // namespace reconlab::rero

#endif  // RECONLAB_RERO_RERO_H_
