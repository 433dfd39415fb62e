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
#ifndef RECONLAB_RERO_SOUNDNESS_H_
#define RECONLAB_RERO_SOUNDNESS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "reconlab/common.h"
#include "reconlab/rero/rero.h"
#include "reconlab/rng.h"

namespace reconlab::rero {

// M(D) = mean(D) + N(0, s^2 I) with D = fixed u {z}. Under replace-one
// adjacency over a prior of diameter diam, the l2 sensitivity is diam / n and
// the mechanism is exactly (diam/n)^2 / (2 s^2)-zCDP.
class MeanReleaseMechanism {
 public:
  MeanReleaseMechanism(Matrix fixed, double noise_std);

  std::size_t n() const { return fixed_rows_ + 1; }
  std::size_t dim() const { return fixed_sum_.size(); }
  double noise_std() const { return noise_std_; }

  Vector Release(const Vector& z, Rng& rng) const;
  // log p(release | z) up to a z-independent constant.
  double LogLikelihood(const Vector& release, const Vector& z) const;
  double Rho(double diameter) const;

 private:
  std::size_t fixed_rows_;
  Vector fixed_sum_;
  double noise_std_;
};

// Finite prior supported on positions along a line origin + t * direction.
struct LinePrior {
  std::string name;
  Vector origin;
  Vector direction;  // unit length
  Vector positions;  // sorted ascending
  FinitePrior prior;

  double diameter() const { return positions.back() - positions.front(); }
  // Support points plus the centre of every eta-window starting at a support
  // point. The sup defining kappa and the MAP argmax are both attained on
  // this set for the l2 error.
  std::vector<Vector> Candidates(double eta) const;
};

LinePrior MakeLinePrior(std::string name, std::size_t dim, Vector positions,
                        Vector masses);

// The three priors of the soundness grid: 5 and 11 equally spaced points with
// uniform mass, and 5 points with decreasing mass, all on a unit segment.
std::vector<LinePrior> SoundnessPriors(std::size_t dim);

struct SoundnessGrid {
  std::size_t dim = 4;
  std::size_t fixed_size = 9;
  std::vector<double> noise_stds = {0.05, 0.1, 0.3};
  std::vector<double> etas = {0.05, 0.15, 0.3};
  std::size_t trials = 2000;
  // Allowed excess over gamma, in Wilson half-widths.
  double slack = 3.0;
  std::uint64_t seed = 2024;
};

struct SoundnessCell {
  double noise_std = 0.0;
  double eta = 0.0;
  std::string prior;
  double kappa = 0.0;
  double rho = 0.0;
  double gamma = 0.0;
  RateEstimate rate;
  bool sound = false;
};

std::vector<SoundnessCell> RunSoundnessGrid(
    const SoundnessGrid& grid, Execution execution = Execution::kParallel);

}  // namespace reconlab::rero

#endif  // RECONLAB_RERO_SOUNDNESS_H_
