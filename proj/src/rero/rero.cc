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
#include "reconlab/rero/rero.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "reconlab/parallel.h"

namespace reconlab::rero {
namespace {

double Clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void CheckKappa(double kappa) {
  Require(kappa >= 0.0 && kappa <= 1.0, "kappa must lie in [0, 1]");
}

}  // namespace

std::string_view BoundSourceName(BoundSource s) {
  switch (s) {
    case BoundSource::kThm2:
      return "thm2";
    case BoundSource::kCor1:
      return "cor1";
    case BoundSource::kCor2:
      return "cor2";
    case BoundSource::kProp1:
      return "prop1";
    case BoundSource::kProp2:
      return "prop2";
  }
  return "?";
}

double Error(ErrorFn fn, std::span<const double> a, std::span<const double> b) {
  Require(a.size() == b.size(), "error function operands differ in length");
  if (fn == ErrorFn::kZeroOne) {
    return std::equal(a.begin(), a.end(), b.begin()) ? 0.0 : 1.0;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return std::sqrt(s);
}

double KappaUniformBall(double eta, std::size_t d, bool* degenerate) {
  Require(eta >= 0.0, "eta must be nonnegative");
  Require(d >= 1, "dimension must be positive");
  const bool covers = eta >= 1.0;
  if (degenerate != nullptr) *degenerate = covers;
  if (covers) return 1.0;
  return std::pow(eta, static_cast<double>(d));
}

double KappaGaussianBound(double eta, double sigma, std::size_t d) {
  Require(eta >= 0.0 && sigma > 0.0 && d >= 1, "invalid Gaussian prior");
  const double dd = static_cast<double>(d);
  const double q = eta * eta / (sigma * sigma * dd);
  if (q >= 1.0) return 1.0;
  if (q == 0.0) return 0.0;
  return std::exp(0.5 * dd * (1.0 - q + std::log(q)));
}

double KappaGaussianCenter(double eta, double sigma, std::size_t d) {
  Require(eta >= 0.0 && sigma > 0.0 && d >= 1, "invalid Gaussian prior");
  if (eta == 0.0) return 0.0;
  return boost::math::gamma_p(0.5 * static_cast<double>(d),
                              0.5 * eta * eta / (sigma * sigma));
}

double KappaTwoPoint(double p) {
  Require(p > 0.0 && p < 1.0, "two-point mass must lie in (0, 1)");
  return std::max(p, 1.0 - p);
}

void FinitePrior::Validate() const {
  Require(!points.empty(), "finite prior needs at least one point");
  Require(points.size() == masses.size(), "points and masses differ in count");
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Require(points[i].size() == points[0].size(), "prior points differ in dim");
    Require(masses[i] >= 0.0, "negative prior mass");
    total += masses[i];
  }
  Require(std::abs(total - 1.0) <= 1e-9, "prior masses must sum to 1");
}

FinitePrior TwoPointPrior(double p, const Vector& z, const Vector& z_prime) {
  Require(p > 0.0 && p < 1.0, "two-point mass must lie in (0, 1)");
  Require(z != z_prime, "two-point prior needs distinct points");
  return {{z, z_prime}, {p, 1.0 - p}};
}

double KappaFinite(const FinitePrior& prior, ErrorFn fn, double eta,
                   std::span<const Vector> candidates) {
  prior.Validate();
  Require(!candidates.empty(), "kappa needs at least one candidate");
  double best = 0.0;
  for (const Vector& c : candidates) {
    double mass = 0.0;
    for (std::size_t i = 0; i < prior.points.size(); ++i) {
      if (Error(fn, prior.points[i], c) <= eta) mass += prior.masses[i];
    }
    best = std::max(best, mass);
  }
  return best;
}

Sampler UniformBallSampler(std::size_t d) {
  Require(d >= 1, "dimension must be positive");
  return [d](Rng& rng) {
    Vector v(d);
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (double& x : v) {
        x = rng.Normal();
        norm2 += x * x;
      }
    } while (norm2 == 0.0);
    const double radius =
        std::pow(rng.Uniform(), 1.0 / static_cast<double>(d)) / std::sqrt(norm2);
    for (double& x : v) x *= radius;
    return v;
  };
}

Sampler GaussianSampler(const Vector& center, double sigma) {
  Require(sigma > 0.0, "sigma must be positive");
  return [center, sigma](Rng& rng) {
    Vector v = center;
    for (double& x : v) x += sigma * rng.Normal();
    return v;
  };
}

Sampler FiniteSampler(const FinitePrior& prior) {
  prior.Validate();
  Vector cumulative(prior.masses.size());
  std::partial_sum(prior.masses.begin(), prior.masses.end(),
                   cumulative.begin());
  return [points = prior.points, cumulative](Rng& rng) {
    const double u = rng.Uniform() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t i = std::min<std::size_t>(it - cumulative.begin(),
                                                points.size() - 1);
    return points[i];
  };
}

RateEstimate WilsonInterval(std::size_t successes, std::size_t trials,
                            double z) {
  Require(trials > 0, "interval needs at least one trial");
  Require(successes <= trials, "more successes than trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {successes, trials, p, std::max(0.0, center - half),
          std::min(1.0, center + half)};
}

RateEstimate KappaMonteCarlo(const Sampler& prior, ErrorFn fn, double eta,
                             std::span<const Vector> candidates,
                             std::size_t samples, std::uint64_t seed) {
  Require(!candidates.empty(), "kappa needs at least one candidate");
  Require(samples > 0, "need at least one sample");
  std::vector<std::size_t> hits(candidates.size(), 0);
  Rng rng = Rng(seed).Split("kappa");
  for (std::size_t s = 0; s < samples; ++s) {
    const Vector z = prior(rng);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (Error(fn, z, candidates[c]) <= eta) ++hits[c];
    }
  }
  const std::size_t best = static_cast<std::size_t>(
      std::max_element(hits.begin(), hits.end()) - hits.begin());
  return WilsonInterval(hits[best], samples);
}

ReRoBound RdpToRero(double alpha, double epsilon, double kappa, double eta) {
  Require(alpha > 1.0, "alpha must exceed 1");
  Require(epsilon >= 0.0, "epsilon must be nonnegative");
  CheckKappa(kappa);
  double gamma = 0.0;
  if (kappa > 0.0) {
    // (kappa e^eps)^((alpha-1)/alpha) in log space; e^eps may overflow.
    gamma = Clamp01(
        std::exp((alpha - 1.0) / alpha * (std::log(kappa) + epsilon)));
  }
  return {eta, kappa, BoundSource::kThm2, alpha, epsilon, gamma};
}

ReRoBound PureDpToRero(double epsilon, double kappa, double eta) {
  Require(epsilon >= 0.0, "epsilon must be nonnegative");
  CheckKappa(kappa);
  const double gamma =
      kappa > 0.0 ? Clamp01(std::exp(std::log(kappa) + epsilon)) : 0.0;
  return {eta, kappa, BoundSource::kCor1, 0.0, epsilon, gamma};
}

ReRoBound ZcdpToRero(double rho, double kappa, double eta) {
  Require(rho >= 0.0, "rho must be nonnegative");
  CheckKappa(kappa);
  double gamma = 1.0;
  if (kappa == 0.0) {
    gamma = 0.0;
  } else {
    const double log_inv = -std::log(kappa);
    if (rho < log_inv) {
      const double gap = std::sqrt(log_inv) - std::sqrt(rho);
      gamma = Clamp01(std::exp(-gap * gap));
    }
  }
  return {eta, kappa, BoundSource::kCor2, 0.0, rho, gamma};
}

double ReroToDp(double epsilon, double gamma) {
  Require(epsilon >= 0.0, "epsilon must be nonnegative");
  Require(gamma >= 0.0 && gamma <= 1.0, "gamma must lie in [0, 1]");
  // (e^eps + 1) gamma - e^eps, rearranged to stay finite for huge eps.
  if (gamma == 1.0) return 1.0;
  return std::max(0.0, gamma - std::exp(epsilon) * (1.0 - gamma));
}

namespace {

ReRoBound Compose(double kappa, double eta, Privacy privacy,
                  BoundSource source) {
  ReRoBound b = privacy.kind == Privacy::Kind::kPureDp
                    ? PureDpToRero(privacy.value, kappa, eta)
                    : ZcdpToRero(privacy.value, kappa, eta);
  b.source = source;
  return b;
}

}  // namespace

ReRoBound Prop1Gamma(std::size_t d, double eta, Privacy privacy) {
  return Compose(KappaUniformBall(eta, d), eta, privacy, BoundSource::kProp1);
}

ReRoBound Prop2Gamma(std::size_t d, double eta, double sigma, Privacy privacy) {
  Require(sigma > 0.0 && d >= 1, "invalid Gaussian prior");
  if (sigma < 2.0 * eta / std::sqrt(static_cast<double>(d))) {
    throw ValidationError("Gaussian prior bound needs sigma >= 2 eta / sqrt(d)");
  }
  return Compose(KappaGaussianBound(eta, sigma, d), eta, privacy,
                 BoundSource::kProp2);
}

Vector MapAttackFinite(const FinitePrior& prior,
                       std::span<const double> log_likelihood, ErrorFn fn,
                       double eta, std::span<const Vector> candidates) {
  prior.Validate();
  Require(log_likelihood.size() == prior.points.size(),
          "one likelihood per support point required");
  const std::size_t m = prior.points.size();
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    if (prior.masses[i] > 0.0) {
      top = std::max(top, std::log(prior.masses[i]) + log_likelihood[i]);
    }
  }
  if (!std::isfinite(top)) throw NumericalError("zero posterior mass");
  Vector posterior(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (prior.masses[i] > 0.0) {
      posterior[i] =
          std::exp(std::log(prior.masses[i]) + log_likelihood[i] - top);
    }
  }
  std::span<const Vector> cands =
      candidates.empty() ? std::span<const Vector>(prior.points) : candidates;
  std::size_t best = 0;
  double best_mass = -1.0;
  for (std::size_t c = 0; c < cands.size(); ++c) {
    double mass = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (Error(fn, prior.points[i], cands[c]) <= eta) mass += posterior[i];
    }
    if (mass > best_mass) {
      best_mass = mass;
      best = c;
    }
  }
  return cands[best];
}

RateEstimate EmpiricalRero(const Mechanism& mechanism, const Sampler& prior,
                           const Attack& attack, ErrorFn fn, double eta,
                           std::size_t trials, std::uint64_t seed,
                           Execution execution) {
  Require(trials >= 1, "need at least one trial");
  std::vector<char> success(trials, 0);
  auto run = [&](std::size_t t) {
    const Rng root(DeriveSeed(seed, t));
    Rng prior_rng = root.Split("prior");
    Rng mech_rng = root.Split("mechanism");
    const Vector z = prior(prior_rng);
    const Vector guess = attack(mechanism(z, mech_rng));
    success[t] = Error(fn, z, guess) <= eta ? 1 : 0;
  };
  ParallelFor(trials, execution, run);
  std::size_t hits = 0;
  for (char s : success) hits += static_cast<std::size_t>(s);
  return WilsonInterval(hits, trials);
}

}  // namespace reconlab::rero
