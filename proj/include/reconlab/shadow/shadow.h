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
#ifndef RECONLAB_SHADOW_SHADOW_H_
#define RECONLAB_SHADOW_SHADOW_H_

#include <cstddef>
#include <utility>
#include <vector>

#include "reconlab/common.h"
#include "reconlab/data/dataset.h"
#include "reconlab/nn/mlp.h"
#include "reconlab/nn/train.h"
#include "reconlab/shadow/featurize.h"

namespace reconlab::shadow {

// Attack training data: raw model features paired with the shadow target
// features. Normalization is stored, not applied.
struct ShadowSet {
  Featurizer featurizer;
  Matrix features;
  Matrix targets;
  NormStats stats;

  std::size_t size() const { return features.rows; }
};

struct ShadowOptions {
  // Seeds of T the adversary does not know; each shadow then draws its own.
  SecretSeeds secret;
  Execution execution = Execution::kParallel;
};

// Shadow model i is T(fixed u {shadow_targets[i]}).
std::vector<ModelParams> TrainShadowModels(const LabeledDataset& fixed,
                                           const LabeledDataset& shadow_targets,
                                           const MlpArchitecture& arch,
                                           const TrainConfig& config,
                                           const ShadowOptions& options = {});

ShadowSet BuildShadowSet(const std::vector<ModelParams>& models,
                         const LabeledDataset& shadow_targets,
                         const Featurizer& featurizer,
                         Execution execution = Execution::kParallel);

ShadowSet GenShadows(const LabeledDataset& fixed,
                     const LabeledDataset& shadow_targets,
                     const MlpArchitecture& arch, const TrainConfig& config,
                     const Featurizer& featurizer,
                     const ShadowOptions& options = {});

// The first `count` points of the pool become black-box probes; the rest
// remain available as shadow targets.
std::pair<Matrix, LabeledDataset> SplitProbes(const LabeledDataset& pool,
                                              std::size_t count);

}  // namespace reconlab::shadow

#endif  // RECONLAB_SHADOW_SHADOW_H_
