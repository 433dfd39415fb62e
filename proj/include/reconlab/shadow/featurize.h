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
#ifndef RECONLAB_SHADOW_FEATURIZE_H_
#define RECONLAB_SHADOW_FEATURIZE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "reconlab/common.h"
#include "reconlab/nn/mlp.h"

namespace reconlab::shadow {

// How a model is turned into the reconstructor's input.
struct Featurizer {
  enum class Mode {
    kWhiteBox,     // every parameter, canonical layer order
    kLayerSubset,  // parameters of the listed layers only
    kBlackBox,     // logits on a fixed probe set, probe order
  };

  Mode mode = Mode::kWhiteBox;
  std::vector<std::size_t> layers;
  Matrix probes;

  static Featurizer WhiteBox();
  static Featurizer LayerSubset(std::vector<std::size_t> layers);
  static Featurizer BlackBox(Matrix probes);

  void Validate(const MlpArchitecture& arch) const;
  std::size_t FeatureLength(const MlpArchitecture& arch) const;
  // "white-box", "layers=0,1" or "black-box:<probe count>".
  std::string Describe() const;
};

Vector Featurize(const ModelParams& model, const Featurizer& featurizer);

// Per-coordinate standardization fitted over shadow features.
struct NormStats {
  Vector mean;
  Vector std;

  friend bool operator==(const NormStats&, const NormStats&) = default;
};

inline constexpr double kDegenerateStd = 1e-12;

// Population mean and standard deviation of each column. Columns with
// std < kDegenerateStd get std 1.
NormStats FitNormStats(const Matrix& features);

Vector ApplyNorm(std::span<const double> v, const NormStats& stats);
Vector InvertNorm(std::span<const double> v, const NormStats& stats);

}  // namespace reconlab::shadow

#endif  // RECONLAB_SHADOW_FEATURIZE_H_
