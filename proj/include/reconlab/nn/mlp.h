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
#ifndef RECONLAB_NN_MLP_H_
#define RECONLAB_NN_MLP_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reconlab/common.h"
#include "reconlab/data/dataset.h"

namespace reconlab {

enum class Activation {
  kElu,
  kRelu,
  kLeakyRelu,
  kTanh,
  kSigmoid,
  kSoftplus,
  kIdentity,
};

std::string_view ActivationName(Activation a);
Activation ParseActivation(std::string_view name);

double Activate(Activation a, double pre);
// Derivative with respect to the pre-activation. `post` is Activate(a, pre),
// passed in because several derivatives are cheapest in terms of it.
double ActivationDerivative(Activation a, double pre, double post);

struct MlpArchitecture {
  // Input dimension first, output dimension last.
  std::vector<std::size_t> layer_widths;
  Activation activation = Activation::kElu;
  // Applied to the last layer. Classifiers keep Identity so outputs are
  // logits.
  Activation output_activation = Activation::kIdentity;

  void Validate() const;

  std::size_t num_layers() const { return layer_widths.size() - 1; }
  std::size_t input_dim() const { return layer_widths.front(); }
  std::size_t output_dim() const { return layer_widths.back(); }
  std::size_t fan_in(std::size_t layer) const { return layer_widths[layer]; }
  std::size_t fan_out(std::size_t layer) const {
    return layer_widths[layer + 1];
  }
  std::size_t LayerParameterCount(std::size_t layer) const;
  std::size_t LayerOffset(std::size_t layer) const;
  std::size_t ParameterCount() const;

  friend bool operator==(const MlpArchitecture&,
                         const MlpArchitecture&) = default;
};

// Weights and biases of an MLP stored as one flat vector in canonical order:
// for each layer, the (fan_out x fan_in) row-major weight matrix followed by
// the bias vector.
class ModelParams {
 public:
  ModelParams() = default;
  explicit ModelParams(MlpArchitecture arch);
  ModelParams(MlpArchitecture arch, Vector flat);

  const MlpArchitecture& arch() const { return arch_; }
  std::size_t parameter_count() const { return flat_.size(); }

  std::span<double> flat() { return flat_; }
  std::span<const double> flat() const { return flat_; }

  std::span<double> weights(std::size_t layer);
  std::span<const double> weights(std::size_t layer) const;
  std::span<double> bias(std::size_t layer);
  std::span<const double> bias(std::size_t layer) const;
  // Weights followed by bias of one layer.
  std::span<const double> layer(std::size_t layer) const;

  bool AllFinite() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  MlpArchitecture arch_;
  Vector flat_;
};

double L2Distance(const ModelParams& a, const ModelParams& b);

// Lecun-normal weights (std 1/sqrt(fan_in)), zero biases.
ModelParams InitParams(const MlpArchitecture& arch, std::uint64_t seed);

Vector Forward(const ModelParams& params, std::span<const double> x);

// Activations of a batch, rows = examples. post[0] is the input batch;
// pre[l] and post[l + 1] belong to layer l.
struct ForwardCache {
  std::vector<Matrix> pre;
  std::vector<Matrix> post;

  const Matrix& output() const { return post.back(); }
};

void ForwardBatch(const ModelParams& params, const Matrix& inputs,
                  ForwardCache* cache);

struct BackwardOptions {
  // Per-example gradients are rescaled to at most this l2 norm when > 0.
  double clip_norm = 0.0;
};

// Accumulates sum_i grad_i into `grad`, where grad_i is the parameter
// gradient of example i given dLoss/dOutput (rows of output_grad, taken with
// respect to post-activation outputs). Returns per-example gradient norms
// before clipping.
Vector BackwardBatch(const ModelParams& params, const ForwardCache& cache,
                     const Matrix& output_grad, const BackwardOptions& options,
                     ModelParams* grad);

struct LossAndGrad {
  double loss = 0.0;
  ModelParams grad;
};

// Mean softmax cross-entropy over the batch and its gradient. Throws
// NumericalError when the loss is not finite.
LossAndGrad CrossEntropyLossAndGrad(const ModelParams& params,
                                    std::span<const DataPoint> batch);

// Cross-entropy of a single example.
double ExampleLoss(const ModelParams& params, const DataPoint& point);

Vector Softmax(std::span<const double> logits);

// Fraction of parameters in each layer whose single-example gradient is
// exactly zero.
Vector ZeroGradFraction(const ModelParams& params, const DataPoint& point);

}  // namespace reconlab

#endif  // RECONLAB_NN_MLP_H_
