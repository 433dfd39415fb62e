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
#include "reconlab/shadow/reconn.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "reconlab/rng.h"

namespace reconlab::shadow {

void RecoNNConfig::Validate() const {
  for (std::size_t w : hidden_widths) Require(w > 0, "hidden width must be positive");
  Require(learning_rate > 0.0, "learning rate must be positive");
  Require(decay >= 0.0 && decay < 1.0, "RMSProp decay must lie in [0, 1)");
  Require(epsilon > 0.0, "RMSProp epsilon must be positive");
  Require(batch_size > 0, "batch size must be positive");
}

std::size_t AutoHiddenWidth(std::size_t feature_len) {
  const auto scaled = static_cast<std::size_t>(
      std::ceil(4.0 * std::sqrt(static_cast<double>(feature_len))));
  return std::max<std::size_t>(64, scaled);
}

MlpArchitecture RecoNNConfig::Architecture(std::size_t feature_len,
                                           std::size_t target_dim) const {
  MlpArchitecture arch;
  arch.layer_widths.push_back(feature_len);
  if (hidden_widths.empty()) {
    const std::size_t w = AutoHiddenWidth(feature_len);
    arch.layer_widths.insert(arch.layer_widths.end(), {w, w});
  } else {
    arch.layer_widths.insert(arch.layer_widths.end(), hidden_widths.begin(),
                             hidden_widths.end());
  }
  arch.layer_widths.push_back(target_dim);
  arch.activation = activation;
  arch.output_activation = Activation::kSigmoid;
  arch.Validate();
  return arch;
}

RecoNN::RecoNN(ModelParams net, Featurizer featurizer, NormStats stats)
    : net_(std::move(net)),
      featurizer_(std::move(featurizer)),
      stats_(std::move(stats)) {
  Require(net_.arch().input_dim() == stats_.mean.size(),
          "reconstructor input does not match normalization length");
}

Vector RecoNN::ReconstructFeatures(std::span<const double> raw) const {
  return Forward(net_, ApplyNorm(raw, stats_));
}

Vector RecoNN::Attack(const ModelParams& released) const {
  return ReconstructFeatures(Featurize(released, featurizer_));
}

double ReconstructionLoss(const Matrix& outputs, const Matrix& targets) {
  Require(outputs.rows == targets.rows && outputs.cols == targets.cols,
          "outputs and targets differ in shape");
  double total = 0.0;
  for (std::size_t i = 0; i < outputs.data.size(); ++i) {
    const double d = outputs.data[i] - targets.data[i];
    total += std::abs(d) + d * d;
  }
  return total / static_cast<double>(outputs.data.size());
}

RecoNN TrainRecoNN(const ShadowSet& set, const RecoNNConfig& config,
                   Vector* epoch_losses) {
  config.Validate();
  Require(set.size() > 0, "reconstructor needs a nonempty shadow set");
  Require(set.size() >= config.batch_size,
          "shadow set of " + std::to_string(set.size()) +
              " pairs is smaller than one batch");
  Require(set.stats.mean.size() == set.features.cols,
          "shadow set normalization is missing");
  const std::size_t n = set.size();
  const std::size_t dim = set.targets.cols;
  const MlpArchitecture arch = config.Architecture(set.features.cols, dim);
  ModelParams params = InitParams(arch, config.seed);

  Matrix normalized(n, set.features.cols);
  for (std::size_t r = 0; r < n; ++r) {
    const Vector v = ApplyNorm(set.features.row(r), set.stats);
    std::copy(v.begin(), v.end(), normalized.row(r).begin());
  }

  Vector second_moment(params.parameter_count(), 0.0);
  const Rng shuffle_root = Rng(config.seed).Split("reconn-shuffle");
  const std::size_t batch_size = config.batch_size;
  ForwardCache cache;
  ModelParams grad(arch);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    Rng rng = shuffle_root.Split(epoch);
    const std::vector<std::size_t> order = RandomPermutation(n, rng);
    double epoch_loss = 0.0;
    for (std::size_t begin = 0; begin < n; begin += batch_size) {
      const std::size_t end = std::min(n, begin + batch_size);
      const std::size_t b = end - begin;
      Matrix inputs(b, normalized.cols);
      Matrix targets(b, dim);
      for (std::size_t i = 0; i < b; ++i) {
        const std::size_t src = order[begin + i];
        std::copy(normalized.row(src).begin(), normalized.row(src).end(),
                  inputs.row(i).begin());
        std::copy(set.targets.row(src).begin(), set.targets.row(src).end(),
                  targets.row(i).begin());
      }
      ForwardBatch(params, inputs, &cache);
      const Matrix& out = cache.output();
      epoch_loss += ReconstructionLoss(out, targets) * static_cast<double>(b);
      Matrix output_grad(b, dim);
      const double scale = 1.0 / static_cast<double>(b * dim);
      for (std::size_t i = 0; i < output_grad.data.size(); ++i) {
        const double d = out.data[i] - targets.data[i];
        const double sign = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
        output_grad.data[i] = (sign + 2.0 * d) * scale;
      }
      std::fill(grad.flat().begin(), grad.flat().end(), 0.0);
      BackwardBatch(params, cache, output_grad, {}, &grad);
      auto theta = params.flat();
      const auto g = grad.flat();
      for (std::size_t j = 0; j < theta.size(); ++j) {
        second_moment[j] = config.decay * second_moment[j] +
                           (1.0 - config.decay) * g[j] * g[j];
        theta[j] -= config.learning_rate * g[j] /
                    (std::sqrt(second_moment[j]) + config.epsilon);
      }
    }
    epoch_loss /= static_cast<double>(n);
    if (!std::isfinite(epoch_loss) || !params.AllFinite()) {
      throw NumericalError("reconstructor diverged at epoch " +
                           std::to_string(epoch));
    }
    if (epoch_losses != nullptr) epoch_losses->push_back(epoch_loss);
  }
  return RecoNN(std::move(params), set.featurizer, set.stats);
}

double RunProtocol(const LabeledDataset& fixed, const DataPoint& z,
                   const MlpArchitecture& arch, const TrainConfig& config,
                   const ReconstructionAttack& attack,
                   const ErrorFunction& error) {
  for (const DataPoint& p : fixed) {
    Require(!(p == z), "target point is already in the fixed set");
  }
  const ModelParams released = Train(fixed.With(z), arch, config);
  const Vector candidate = attack(released);
  return error(z.x, candidate);
}

}  // namespace reconlab::shadow
