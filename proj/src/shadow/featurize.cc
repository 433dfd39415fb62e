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
#include "reconlab/shadow/featurize.h"

#include <algorithm>
#include <cmath>
#include <utility>

namespace reconlab::shadow {

Featurizer Featurizer::WhiteBox() { return {}; }

Featurizer Featurizer::LayerSubset(std::vector<std::size_t> layers) {
  Featurizer f;
  f.mode = Mode::kLayerSubset;
  f.layers = std::move(layers);
  return f;
}

Featurizer Featurizer::BlackBox(Matrix probes) {
  Featurizer f;
  f.mode = Mode::kBlackBox;
  f.probes = std::move(probes);
  return f;
}

void Featurizer::Validate(const MlpArchitecture& arch) const {
  switch (mode) {
    case Mode::kWhiteBox:
      return;
    case Mode::kLayerSubset:
      Require(!layers.empty(), "layer subset is empty");
      for (std::size_t l : layers) {
        Require(l < arch.num_layers(),
                "layer index " + std::to_string(l) + " out of range for " +
                    std::to_string(arch.num_layers()) + " layers");
      }
      return;
    case Mode::kBlackBox:
      Require(probes.rows > 0, "black-box probe set is empty");
      Require(probes.cols == arch.input_dim(),
              "probe dimension does not match the model input");
      return;
  }
}

std::size_t Featurizer::FeatureLength(const MlpArchitecture& arch) const {
  Validate(arch);
  switch (mode) {
    case Mode::kWhiteBox:
      return arch.ParameterCount();
    case Mode::kLayerSubset: {
      std::size_t n = 0;
      for (std::size_t l : layers) n += arch.LayerParameterCount(l);
      return n;
    }
    case Mode::kBlackBox:
      return probes.rows * arch.output_dim();
  }
  return 0;
}

std::string Featurizer::Describe() const {
  switch (mode) {
    case Mode::kWhiteBox:
      return "white-box";
    case Mode::kLayerSubset: {
      std::string s = "layers=";
      for (std::size_t i = 0; i < layers.size(); ++i) {
        if (i > 0) s += ",";
        s += std::to_string(layers[i]);
      }
      return s;
    }
    case Mode::kBlackBox:
      return "black-box:" + std::to_string(probes.rows);
  }
  return "?";
}

Vector Featurize(const ModelParams& model, const Featurizer& featurizer) {
  featurizer.Validate(model.arch());
  switch (featurizer.mode) {
    case Featurizer::Mode::kWhiteBox:
      return {model.flat().begin(), model.flat().end()};
    case Featurizer::Mode::kLayerSubset: {
      Vector out;
      for (std::size_t l : featurizer.layers) {
        const auto layer = model.layer(l);
        out.insert(out.end(), layer.begin(), layer.end());
      }
      return out;
    }
    case Featurizer::Mode::kBlackBox: {
      ForwardCache cache;
      ForwardBatch(model, featurizer.probes, &cache);
      return cache.output().data;
    }
  }
  return {};
}

NormStats FitNormStats(const Matrix& features) {
  Require(features.rows > 0, "normalization statistics need at least one row");
  const std::size_t cols = features.cols;
  const double n = static_cast<double>(features.rows);
  NormStats stats{Vector(cols, 0.0), Vector(cols, 0.0)};
  for (std::size_t r = 0; r < features.rows; ++r) {
    const auto row = features.row(r);
    for (std::size_t c = 0; c < cols; ++c) stats.mean[c] += row[c];
  }
  for (double& m : stats.mean) m /= n;
  for (std::size_t r = 0; r < features.rows; ++r) {
    const auto row = features.row(r);
    for (std::size_t c = 0; c < cols; ++c) {
      const double d = row[c] - stats.mean[c];
      stats.std[c] += d * d;
    }
  }
  for (double& s : stats.std) {
    s = std::sqrt(s / n);
    if (s < kDegenerateStd) s = 1.0;
  }
  return stats;
}

Vector ApplyNorm(std::span<const double> v, const NormStats& stats) {
  Require(v.size() == stats.mean.size(),
          "feature length " + std::to_string(v.size()) +
              " does not match normalization length " +
              std::to_string(stats.mean.size()));
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = (v[i] - stats.mean[i]) / stats.std[i];
  }
  return out;
}

Vector InvertNorm(std::span<const double> v, const NormStats& stats) {
  Require(v.size() == stats.mean.size(), "feature length mismatch");
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i] * stats.std[i] + stats.mean[i];
  }
  return out;
}

}  // namespace reconlab::shadow
