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
#ifndef RECONLAB_NN_TRAIN_H_
#define RECONLAB_NN_TRAIN_H_

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "reconlab/data/dataset.h"
#include "reconlab/nn/mlp.h"

namespace reconlab {

enum class Optimizer {
  kGdMomentum,   // full batch, one step per epoch
  kSgdMomentum,  // shuffled mini-batches
  kDpGd,         // full batch, per-example clipping plus Gaussian noise
};

std::string_view OptimizerName(Optimizer o);
Optimizer ParseOptimizer(std::string_view name);

// The training algorithm. Every source of randomness is named by a seed so
// that training is a pure function of (dataset, architecture, config).
struct TrainConfig {
  Optimizer optimizer = Optimizer::kGdMomentum;
  double learning_rate = 0.2;
  double momentum = 0.9;
  std::size_t epochs = 100;
  // 0 means full batch.
  std::size_t batch_size = 0;
  double clip_norm = 0.0;
  double noise_multiplier = 0.0;
  std::uint64_t init_seed = 0;
  std::uint64_t shuffle_seed = 0;
  std::uint64_t noise_seed = 0;

  void Validate() const;
  // Number of gradient steps taken on a dataset of n points.
  std::size_t Steps(std::size_t n) const;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

// Classical momentum: v <- mu v + g, theta <- theta - lr v. Dispatches to
// TrainDp for Optimizer::kDpGd. Throws NumericalError on divergence.
ModelParams Train(const LabeledDataset& dataset, const MlpArchitecture& arch,
                  const TrainConfig& config);

// Each step clips per-example gradients to clip_norm, sums them, adds
// N(0, (noise_multiplier * clip_norm)^2 I) from the noise_seed stream,
// divides by n and applies the momentum update.
ModelParams TrainDp(const LabeledDataset& dataset, const MlpArchitecture& arch,
                    const TrainConfig& config);

double Accuracy(const ModelParams& params, const LabeledDataset& dataset);

// Which of the three seeds of T the adversary does not know. A secret seed is
// replaced by a fresh value per trained model, so the adversary's shadows and
// the released model draw it independently.
struct SecretSeeds {
  bool init = false;
  bool shuffle = false;
  bool noise = false;

  friend bool operator==(const SecretSeeds&, const SecretSeeds&) = default;
};

// Copy of config whose secret seeds are replaced by a seed derived from
// (original seed, stream, index). Distinct streams keep released models and
// shadow models from ever sharing a derived seed.
TrainConfig WithDerivedSeeds(const TrainConfig& config, SecretSeeds secret,
                             std::string_view stream, std::uint64_t index);

}  // namespace reconlab

#endif  // RECONLAB_NN_TRAIN_H_
