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
#include "reconlab/nn/train.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "reconlab/rng.h"

namespace reconlab {

std::string_view OptimizerName(Optimizer o) {
  switch (o) {
    case Optimizer::kGdMomentum: return "gd-momentum";
    case Optimizer::kSgdMomentum: return "sgd-momentum";
    case Optimizer::kDpGd: return "dp-gd";
  }
  return "unknown";
}

Optimizer ParseOptimizer(std::string_view name) {
  for (Optimizer o :
       {Optimizer::kGdMomentum, Optimizer::kSgdMomentum, Optimizer::kDpGd}) {
    if (OptimizerName(o) == name) return o;
  }
  throw ValidationError("unknown optimizer '" + std::string(name) + "'");
}

void TrainConfig::Validate() const {
  Require(learning_rate >= 0 && std::isfinite(learning_rate),
          "learning rate must be finite and non-negative");
  Require(momentum >= 0 && momentum < 1, "momentum must lie in [0, 1)");
  if (optimizer == Optimizer::kDpGd) {
    Require(clip_norm > 0, "DP-GD requires a positive clip norm");
    Require(noise_multiplier >= 0 && std::isfinite(noise_multiplier),
            "DP-GD requires a non-negative noise multiplier");
  }
}

std::size_t TrainConfig::Steps(std::size_t n) const {
  if (optimizer != Optimizer::kSgdMomentum || batch_size == 0 ||
      batch_size >= n) {
    return epochs;
  }
  return epochs * ((n + batch_size - 1) / batch_size);
}

namespace {

class Trainer {
 public:
  Trainer(const LabeledDataset& dataset, const MlpArchitecture& arch,
          const TrainConfig& config)
      : dataset_(dataset),
        config_(config),
        inputs_(dataset.FeatureMatrix()),
        params_(InitParams(arch, config.init_seed)),
        velocity_(params_.parameter_count(), 0.0) {
    arch.Validate();
    config.Validate();
    Require(dataset.dim() == arch.input_dim(),
            "dataset dimension does not match network input");
    Require(dataset.num_classes() <= arch.output_dim(),
            "network has fewer outputs than the dataset has classes");
  }

  ModelParams Run() {
    if (dataset_.empty()) return params_;
    std::vector<std::size_t> all(dataset_.size());
    std::iota(all.begin(), all.end(), 0);
    const std::size_t n = dataset_.size();
    const bool minibatch = config_.optimizer == Optimizer::kSgdMomentum &&
                           config_.batch_size > 0 && config_.batch_size < n;
    Rng shuffle_root = Rng(config_.shuffle_seed).Split("shuffle");
    Rng noise_root = Rng(config_.noise_seed).Split("noise");
    std::size_t step = 0;
    for (std::size_t epoch = 0; epoch < config_.epochs; ++epoch) {
      if (!minibatch) {
        Step(all, noise_root, step++, epoch);
        continue;
      }
      Rng rng = shuffle_root.Split(epoch);
      const std::vector<std::size_t> order = RandomPermutation(n, rng);
      for (std::size_t begin = 0; begin < n; begin += config_.batch_size) {
        const std::size_t end = std::min(n, begin + config_.batch_size);
        Step(std::span(order).subspan(begin, end - begin), noise_root, step++,
             epoch);
      }
    }
    return std::move(params_);
  }

 private:
  void Step(std::span<const std::size_t> batch, const Rng& noise_root,
            std::size_t step, std::size_t epoch) {
    const MlpArchitecture& arch = params_.arch();
    Matrix inputs(batch.size(), arch.input_dim());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const auto src = inputs_.row(batch[i]);
      std::copy(src.begin(), src.end(), inputs.row(i).begin());
    }
    ForwardCache cache;
    ForwardBatch(params_, inputs, &cache);

    Matrix output_grad(batch.size(), arch.output_dim());
    double loss = 0.0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const auto logits = cache.output().row(i);
      const double m = *std::max_element(logits.begin(), logits.end());
      double z = 0.0;
      for (double v : logits) z += std::exp(v - m);
      const double log_z = m + std::log(z);
      auto g = output_grad.row(i);
      for (std::size_t j = 0; j < logits.size(); ++j) {
        g[j] = std::exp(logits[j] - log_z);
      }
      const std::size_t y = dataset_[batch[i]].y;
      g[y] -= 1.0;
      loss += log_z - logits[y];
    }
    if (!std::isfinite(loss)) {
      throw NumericalError("training diverged: non-finite loss at epoch " +
                           std::to_string(epoch));
    }

    ModelParams grad(arch);
    BackwardOptions options;
    const bool dp = config_.optimizer == Optimizer::kDpGd;
    if (dp) options.clip_norm = config_.clip_norm;
    BackwardBatch(params_, cache, output_grad, options, &grad);

    auto g = grad.flat();
    if (dp && config_.noise_multiplier > 0) {
      Rng rng = noise_root.Split(step);
      const double noise_std = config_.noise_multiplier * config_.clip_norm;
      for (double& v : g) v += noise_std * rng.Normal();
    }
    const double n = static_cast<double>(batch.size());
    auto theta = params_.flat();
    for (std::size_t j = 0; j < g.size(); ++j) {
      velocity_[j] = config_.momentum * velocity_[j] + g[j] / n;
      theta[j] -= config_.learning_rate * velocity_[j];
    }
    if (!params_.AllFinite()) {
      throw NumericalError("training diverged: non-finite parameters at epoch " +
                           std::to_string(epoch));
    }
  }

  const LabeledDataset& dataset_;
  const TrainConfig& config_;
  Matrix inputs_;
  ModelParams params_;
  Vector velocity_;
};

}  // namespace

ModelParams Train(const LabeledDataset& dataset, const MlpArchitecture& arch,
                  const TrainConfig& config) {
  if (config.optimizer == Optimizer::kDpGd) {
    return TrainDp(dataset, arch, config);
  }
  return Trainer(dataset, arch, config).Run();
}

ModelParams TrainDp(const LabeledDataset& dataset, const MlpArchitecture& arch,
                    const TrainConfig& config) {
  Require(config.optimizer == Optimizer::kDpGd,
          "TrainDp needs a DP-GD configuration");
  return Trainer(dataset, arch, config).Run();
}

double Accuracy(const ModelParams& params, const LabeledDataset& dataset) {
  if (dataset.empty()) return 0.0;
  ForwardCache cache;
  ForwardBatch(params, dataset.FeatureMatrix(), &cache);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto row = cache.output().row(i);
    const auto best = std::max_element(row.begin(), row.end()) - row.begin();
    if (static_cast<std::size_t>(best) == dataset[i].y) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(dataset.size());
}

TrainConfig WithDerivedSeeds(const TrainConfig& config, SecretSeeds secret,
                             std::string_view stream, std::uint64_t index) {
  const std::uint64_t tag = HashBytes(stream);
  TrainConfig out = config;
  if (secret.init) out.init_seed = DeriveSeed(config.init_seed ^ tag, index);
  if (secret.shuffle) {
    out.shuffle_seed = DeriveSeed(config.shuffle_seed ^ Mix64(tag), index);
  }
  if (secret.noise) {
    out.noise_seed = DeriveSeed(config.noise_seed ^ Mix64(Mix64(tag)), index);
  }
  return out;
}

}  // namespace reconlab
