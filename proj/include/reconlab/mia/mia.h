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
#ifndef RECONLAB_MIA_MIA_H_
#define RECONLAB_MIA_MIA_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "reconlab/common.h"
#include "reconlab/data/dataset.h"
#include "reconlab/nn/mlp.h"
#include "reconlab/nn/train.h"

namespace reconlab::mia {

struct MiaTrial {
  int b = 0;
  int guess = 0;
  bool correct = false;
};

// Everything the informed adversary receives: the release, the fixed set,
// the public description of T and both candidates. Returns 0 or 1.
using MiaAttack = std::function<int(
    const ModelParams& released, const LabeledDataset& fixed,
    const MlpArchitecture& arch, const TrainConfig& public_config,
    const DataPoint& z0, const DataPoint& z1)>;

// b ~ Unif{0,1}; release T(fixed u {z_b}) with the secret seeds of config
// re-derived from trial_seed; ask the attack for b.
MiaTrial InformedMiaProtocol(const LabeledDataset& fixed,
                             const MlpArchitecture& arch,
                             const TrainConfig& config, SecretSeeds secret,
                             const MiaAttack& attack, const DataPoint& z0,
                             const DataPoint& z1, std::uint64_t trial_seed);

// Retrains on both candidates with the public config and returns the bit
// whose model is closer in l2 to the release. Throws NumericalError when the
// two distances differ by less than kTieTolerance.
int TrivialDeterministicMia(const ModelParams& released,
                            const LabeledDataset& fixed,
                            const MlpArchitecture& arch,
                            const TrainConfig& public_config,
                            const DataPoint& z0, const DataPoint& z1);

inline constexpr double kTieTolerance = 1e-12;

// Coin flip seeded by the candidates and a base seed.
MiaAttack RandomGuesser(std::uint64_t seed);

using ErrorFunction =
    std::function<double(std::span<const double>, std::span<const double>)>;

// 0 if l(z_hat, z0) < l(z_hat, z1), else 1.
int MiaFromReconstruction(std::span<const double> z_hat,
                          std::span<const double> z0,
                          std::span<const double> z1,
                          const ErrorFunction& error);

struct LossDistributions {
  Vector in;
  Vector out;
};

// Single-example loss of z under n_models models trained on fixed u {z}
// and n_models trained on fixed alone. With vary_init each model draws its
// own init seed; otherwise every model uses config.init_seed.
LossDistributions LossHistogram(const DataPoint& z, const LabeledDataset& fixed,
                                const MlpArchitecture& arch,
                                const TrainConfig& config, std::size_t n_models,
                                bool vary_init,
                                Execution execution = Execution::kParallel);

// Histogram intersection sum_b min(p_a(b), p_b(b)) over `bins` equal bins
// spanning both samples. Identical constant samples overlap fully.
double OverlapCoefficient(std::span<const double> a, std::span<const double> b,
                          std::size_t bins = 20);

// Runs `trials` protocol rounds; round t uses candidates pairs[t] and seed
// DeriveSeed(seed, t).
std::vector<MiaTrial> RunMiaTrials(
    const LabeledDataset& fixed, const MlpArchitecture& arch,
    const TrainConfig& config, SecretSeeds secret, const MiaAttack& attack,
    const std::vector<std::pair<DataPoint, DataPoint>>& pairs,
    std::uint64_t seed, Execution execution = Execution::kParallel);

}  // namespace reconlab::mia

#endif  // RECONLAB_MIA_MIA_H_
