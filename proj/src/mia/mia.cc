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
#include "reconlab/mia/mia.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <utility>

#include "reconlab/parallel.h"
#include "reconlab/rng.h"

namespace reconlab::mia {

MiaTrial InformedMiaProtocol(const LabeledDataset& fixed,
                             const MlpArchitecture& arch,
                             const TrainConfig& config, SecretSeeds secret,
                             const MiaAttack& attack, const DataPoint& z0,
                             const DataPoint& z1, std::uint64_t trial_seed) {
  Require(!(z0 == z1), "membership candidates must differ");
  Rng rng = Rng(trial_seed).Split("mia-bit");
  const int b = static_cast<int>(rng.UniformInt(2));
  const TrainConfig hidden = WithDerivedSeeds(config, secret, "mia", trial_seed);
  const ModelParams released =
      Train(fixed.With(b == 0 ? z0 : z1), arch, hidden);
  const int guess = attack(released, fixed, arch, config, z0, z1);
  Require(guess == 0 || guess == 1, "membership attack must return 0 or 1");
  return {b, guess, b == guess};
}

int TrivialDeterministicMia(const ModelParams& released,
                            const LabeledDataset& fixed,
                            const MlpArchitecture& arch,
                            const TrainConfig& public_config,
                            const DataPoint& z0, const DataPoint& z1) {
  const double d0 =
      L2Distance(released, Train(fixed.With(z0), arch, public_config));
  const double d1 =
      L2Distance(released, Train(fixed.With(z1), arch, public_config));
  if (std::abs(d0 - d1) < kTieTolerance) {
    throw NumericalError("membership undecided: both candidates fit equally");
  }
  return d0 < d1 ? 0 : 1;
}

MiaAttack RandomGuesser(std::uint64_t seed) {
  return [seed](const ModelParams&, const LabeledDataset&,
                const MlpArchitecture&, const TrainConfig&, const DataPoint& z0,
                const DataPoint& z1) {
    std::uint64_t h = seed;
    for (const DataPoint* p : {&z0, &z1}) {
      for (double v : p->x) {
        h = Mix64(h ^ std::bit_cast<std::uint64_t>(v));
      }
    }
    return static_cast<int>(Rng(h).UniformInt(2));
  };
}

int MiaFromReconstruction(std::span<const double> z_hat,
                          std::span<const double> z0,
                          std::span<const double> z1,
                          const ErrorFunction& error) {
  return error(z_hat, z0) < error(z_hat, z1) ? 0 : 1;
}

LossDistributions LossHistogram(const DataPoint& z, const LabeledDataset& fixed,
                                const MlpArchitecture& arch,
                                const TrainConfig& config, std::size_t n_models,
                                bool vary_init, Execution execution) {
  Require(n_models >= 2, "loss histogram needs at least two models per side");
  const SecretSeeds secret{.init = vary_init};
  const LabeledDataset with = fixed.With(z);
  LossDistributions out{Vector(n_models), Vector(n_models)};
  ParallelFor(2 * n_models, execution, [&](std::size_t job) {
    const bool member = job < n_models;
    const std::size_t i = member ? job : job - n_models;
    const TrainConfig c =
        WithDerivedSeeds(config, secret, member ? "loss-in" : "loss-out", i);
    const ModelParams model = Train(member ? with : fixed, arch, c);
    (member ? out.in : out.out)[i] = ExampleLoss(model, z);
  });
  return out;
}

double OverlapCoefficient(std::span<const double> a, std::span<const double> b,
                          std::size_t bins) {
  Require(!a.empty() && !b.empty(), "overlap needs two nonempty samples");
  Require(bins >= 1, "overlap needs at least one bin");
  const auto [a_lo, a_hi] = std::minmax_element(a.begin(), a.end());
  const auto [b_lo, b_hi] = std::minmax_element(b.begin(), b.end());
  const double lo = std::min(*a_lo, *b_lo);
  const double hi = std::max(*a_hi, *b_hi);
  if (hi == lo) return 1.0;
  auto histogram = [&](std::span<const double> xs) {
    Vector h(bins, 0.0);
    for (double x : xs) {
      const auto bin = std::min<std::size_t>(
          bins - 1, static_cast<std::size_t>((x - lo) / (hi - lo) * bins));
      h[bin] += 1.0 / static_cast<double>(xs.size());
    }
    return h;
  };
  const Vector ha = histogram(a);
  const Vector hb = histogram(b);
  double overlap = 0.0;
  for (std::size_t i = 0; i < bins; ++i) overlap += std::min(ha[i], hb[i]);
  return std::min(1.0, overlap);
}

std::vector<MiaTrial> RunMiaTrials(
    const LabeledDataset& fixed, const MlpArchitecture& arch,
    const TrainConfig& config, SecretSeeds secret, const MiaAttack& attack,
    const std::vector<std::pair<DataPoint, DataPoint>>& pairs,
    std::uint64_t seed, Execution execution) {
  std::vector<MiaTrial> trials(pairs.size());
  ParallelFor(pairs.size(), execution, [&](std::size_t t) {
    trials[t] = InformedMiaProtocol(fixed, arch, config, secret, attack,
                                    pairs[t].first, pairs[t].second,
                                    DeriveSeed(seed, t));
  });
  return trials;
}

}  // namespace reconlab::mia
