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
#ifndef RECONLAB_SHADOW_RECONN_H_
#define RECONLAB_SHADOW_RECONN_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "reconlab/common.h"
#include "reconlab/data/dataset.h"
#include "reconlab/nn/mlp.h"
#include "reconlab/nn/train.h"
#include "reconlab/shadow/featurize.h"
#include "reconlab/shadow/shadow.h"

namespace reconlab::shadow {

struct RecoNNConfig {
  // Empty: two hidden layers of AutoHiddenWidth(feature length).
  std::vector<std::size_t> hidden_widths;
  Activation activation = Activation::kRelu;
  // RMSProp.
  double learning_rate = 1e-3;
  double decay = 0.9;
  double epsilon = 1e-7;
  std::size_t batch_size = 128;
  std::size_t epochs = 100;
  std::uint64_t seed = 0;

  void Validate() const;
  MlpArchitecture Architecture(std::size_t feature_len,
                               std::size_t target_dim) const;
};

// max(64, ceil(4 sqrt(feature_len))).
std::size_t AutoHiddenWidth(std::size_t feature_len);

// Reconstructor: normalized model features -> target in [0, 1]^d.
class RecoNN {
 public:
  RecoNN(ModelParams net, Featurizer featurizer, NormStats stats);

  const ModelParams& net() const { return net_; }
  const Featurizer& featurizer() const { return featurizer_; }
  const NormStats& stats() const { return stats_; }

  // From raw (unnormalized) features.
  Vector ReconstructFeatures(std::span<const double> raw) const;
  Vector Attack(const ModelParams& released) const;

 private:
  ModelParams net_;
  Featurizer featurizer_;
  NormStats stats_;
};

// Mean over the batch of MAE + MSE across target coordinates.
double ReconstructionLoss(const Matrix& outputs, const Matrix& targets);

// Per-epoch mean training loss is appended to *epoch_losses when given.
RecoNN TrainRecoNN(const ShadowSet& set, const RecoNNConfig& config,
                   Vector* epoch_losses = nullptr);

using ErrorFunction =
    std::function<double(std::span<const double>, std::span<const double>)>;
using ReconstructionAttack = std::function<Vector(const ModelParams&)>;

// One round of the informed-adversary game: train on fixed u {z}, attack the
// release, score the candidate against z.
double RunProtocol(const LabeledDataset& fixed, const DataPoint& z,
                   const MlpArchitecture& arch, const TrainConfig& config,
                   const ReconstructionAttack& attack,
                   const ErrorFunction& error);

}  // namespace reconlab::shadow

#endif  // RECONLAB_SHADOW_RECONN_H_
