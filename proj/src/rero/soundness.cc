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
#include "reconlab/rero/soundness.h"

#include <algorithm>
#include <cmath>
#include <utility>

namespace reconlab::rero {

MeanReleaseMechanism::MeanReleaseMechanism(Matrix fixed, double noise_std)
    : fixed_rows_(fixed.rows), fixed_sum_(fixed.cols, 0.0),
      noise_std_(noise_std) {
  Require(noise_std > 0.0, "noise std must be positive");
  Require(fixed.cols > 0, "mechanism needs a positive dimension");
  for (std::size_t r = 0; r < fixed.rows; ++r) {
    for (std::size_t c = 0; c < fixed.cols; ++c) fixed_sum_[c] += fixed(r, c);
  }
}

Vector MeanReleaseMechanism::Release(const Vector& z, Rng& rng) const {
  Require(z.size() == dim(), "record dimension mismatch");
  const double inv_n = 1.0 / static_cast<double>(n());
  Vector out(dim());
  for (std::size_t c = 0; c < dim(); ++c) {
    out[c] = (fixed_sum_[c] + z[c]) * inv_n + noise_std_ * rng.Normal();
  }
  return out;
}

double MeanReleaseMechanism::LogLikelihood(const Vector& release,
                                           const Vector& z) const {
  const double inv_n = 1.0 / static_cast<double>(n());
  double s = 0.0;
  for (std::size_t c = 0; c < dim(); ++c) {
    const double diff = release[c] - (fixed_sum_[c] + z[c]) * inv_n;
    s += diff * diff;
  }
  return -s / (2.0 * noise_std_ * noise_std_);
}

double MeanReleaseMechanism::Rho(double diameter) const {
  const double sensitivity = diameter / static_cast<double>(n());
  return sensitivity * sensitivity / (2.0 * noise_std_ * noise_std_);
}

std::vector<Vector> LinePrior::Candidates(double eta) const {
  std::vector<Vector> out = prior.points;
  for (double p : positions) {
    Vector c = origin;
    for (std::size_t j = 0; j < c.size(); ++j) c[j] += (p + eta) * direction[j];
    out.push_back(std::move(c));
  }
  return out;
}

LinePrior MakeLinePrior(std::string name, std::size_t dim, Vector positions,
                        Vector masses) {
  Require(dim >= 1, "dimension must be positive");
  Require(!positions.empty() && positions.size() == masses.size(),
          "positions and masses must be nonempty and equal in length");
  Require(std::is_sorted(positions.begin(), positions.end()),
          "positions must be sorted");
  LinePrior lp;
  lp.name = std::move(name);
  lp.origin = Vector(dim, 0.0);
  lp.direction = Vector(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  lp.positions = std::move(positions);
  for (double p : lp.positions) {
    Vector z(dim);
    for (std::size_t j = 0; j < dim; ++j) z[j] = p * lp.direction[j];
    lp.prior.points.push_back(std::move(z));
  }
  lp.prior.masses = std::move(masses);
  lp.prior.Validate();
  return lp;
}

namespace {

LinePrior Uniform(std::string name, std::size_t dim, std::size_t count) {
  Vector positions(count);
  for (std::size_t i = 0; i < count; ++i) {
    positions[i] = static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return MakeLinePrior(std::move(name), dim, std::move(positions),
                       Vector(count, 1.0 / static_cast<double>(count)));
}

}  // namespace

std::vector<LinePrior> SoundnessPriors(std::size_t dim) {
  std::vector<LinePrior> priors;
  priors.push_back(Uniform("uniform5", dim, 5));
  priors.push_back(Uniform("uniform11", dim, 11));
  priors.push_back(MakeLinePrior("skewed5", dim, {0.0, 0.25, 0.5, 0.75, 1.0},
                                 {0.4, 0.25, 0.15, 0.12, 0.08}));
  return priors;
}

std::vector<SoundnessCell> RunSoundnessGrid(const SoundnessGrid& grid,
                                            Execution execution) {
  Require(grid.trials >= 100, "soundness check needs at least 100 trials");
  Rng data_rng = Rng(grid.seed).Split("fixed");
  Matrix fixed(grid.fixed_size, grid.dim);
  for (double& v : fixed.data) v = data_rng.Uniform();

  const std::vector<LinePrior> priors = SoundnessPriors(grid.dim);
  std::vector<SoundnessCell> cells;
  std::uint64_t cell_index = 0;
  for (double noise : grid.noise_stds) {
    const MeanReleaseMechanism mechanism(fixed, noise);
    for (double eta : grid.etas) {
      for (const LinePrior& lp : priors) {
        const std::vector<Vector> candidates = lp.Candidates(eta);
        SoundnessCell cell;
        cell.noise_std = noise;
        cell.eta = eta;
        cell.prior = lp.name;
        cell.kappa = KappaFinite(lp.prior, ErrorFn::kL2, eta, candidates);
        cell.rho = mechanism.Rho(lp.diameter());
        cell.gamma = ZcdpToRero(cell.rho, cell.kappa, eta).gamma;
        const Attack map = [&](const Vector& release) {
          Vector log_lik(lp.prior.points.size());
          for (std::size_t i = 0; i < log_lik.size(); ++i) {
            log_lik[i] = mechanism.LogLikelihood(release, lp.prior.points[i]);
          }
          return MapAttackFinite(lp.prior, log_lik, ErrorFn::kL2, eta,
                                 candidates);
        };
        const Mechanism release = [&](const Vector& z, Rng& rng) {
          return mechanism.Release(z, rng);
        };
        cell.rate = EmpiricalRero(release, FiniteSampler(lp.prior), map,
                                  ErrorFn::kL2, eta, grid.trials,
                                  DeriveSeed(grid.seed, cell_index++),
                                  execution);
        cell.sound =
            cell.rate.rate <= cell.gamma + grid.slack * cell.rate.half_width();
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

}  // namespace reconlab::rero
