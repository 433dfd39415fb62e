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
#include "reconlab/shadow/shadow.h"

#include <numeric>
#include <string>

#include "reconlab/parallel.h"

namespace reconlab::shadow {

std::vector<ModelParams> TrainShadowModels(const LabeledDataset& fixed,
                                           const LabeledDataset& shadow_targets,
                                           const MlpArchitecture& arch,
                                           const TrainConfig& config,
                                           const ShadowOptions& options) {
  Require(shadow_targets.empty() || fixed.empty() ||
              (shadow_targets.dim() == fixed.dim() &&
               shadow_targets.num_classes() == fixed.num_classes()),
          "shadow pool and fixed set differ in shape");
  std::vector<ModelParams> models(shadow_targets.size());
  ParallelFor(shadow_targets.size(), options.execution, [&](std::size_t i) {
    const TrainConfig shadow_config =
        WithDerivedSeeds(config, options.secret, "shadow", i);
    try {
      models[i] = Train(fixed.With(shadow_targets[i]), arch, shadow_config);
    } catch (const NumericalError& e) {
      throw NumericalError("shadow " + std::to_string(i) + ": " + e.what());
    }
  });
  return models;
}

ShadowSet BuildShadowSet(const std::vector<ModelParams>& models,
                         const LabeledDataset& shadow_targets,
                         const Featurizer& featurizer, Execution execution) {
  Require(models.size() == shadow_targets.size(),
          "one shadow model per shadow target required");
  ShadowSet set;
  set.featurizer = featurizer;
  if (models.empty()) return set;
  const std::size_t len = featurizer.FeatureLength(models[0].arch());
  set.features = Matrix(models.size(), len);
  set.targets = Matrix(models.size(), shadow_targets.dim());
  ParallelFor(models.size(), execution, [&](std::size_t i) {
    const Vector f = Featurize(models[i], featurizer);
    std::copy(f.begin(), f.end(), set.features.row(i).begin());
    const Vector& x = shadow_targets[i].x;
    std::copy(x.begin(), x.end(), set.targets.row(i).begin());
  });
  set.stats = FitNormStats(set.features);
  return set;
}

ShadowSet GenShadows(const LabeledDataset& fixed,
                     const LabeledDataset& shadow_targets,
                     const MlpArchitecture& arch, const TrainConfig& config,
                     const Featurizer& featurizer,
                     const ShadowOptions& options) {
  featurizer.Validate(arch);
  return BuildShadowSet(
      TrainShadowModels(fixed, shadow_targets, arch, config, options),
      shadow_targets, featurizer, options.execution);
}

std::pair<Matrix, LabeledDataset> SplitProbes(const LabeledDataset& pool,
                                              std::size_t count) {
  Require(count <= pool.size(), "probe count exceeds the shadow pool");
  std::vector<std::size_t> head(count);
  std::iota(head.begin(), head.end(), 0);
  std::vector<std::size_t> tail(pool.size() - count);
  std::iota(tail.begin(), tail.end(), count);
  return {pool.Subset(head).FeatureMatrix(), pool.Subset(tail)};
}

}  // namespace reconlab::shadow
