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
#include "reconlab/nn/mlp.h"

#include <algorithm>
#include <cmath>

#include "reconlab/rng.h"

namespace reconlab {

std::string_view ActivationName(Activation a) {
  switch (a) {
    case Activation::kElu: return "elu";
    case Activation::kRelu: return "relu";
    case Activation::kLeakyRelu: return "leaky_relu";
    case Activation::kTanh: return "tanh";
    case Activation::kSigmoid: return "sigmoid";
    case Activation::kSoftplus: return "softplus";
    case Activation::kIdentity: return "identity";
  }
  return "unknown";
}

Activation ParseActivation(std::string_view name) {
  for (Activation a : {Activation::kElu, Activation::kRelu,
                       Activation::kLeakyRelu, Activation::kTanh,
                       Activation::kSigmoid, Activation::kSoftplus,
                       Activation::kIdentity}) {
    if (ActivationName(a) == name) return a;
  }
  throw ValidationError("unknown activation '" + std::string(name) + "'");
}

namespace {

constexpr double kLeakySlope = 0.01;

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

double Activate(Activation a, double x) {
  switch (a) {
    case Activation::kElu: return x > 0 ? x : std::expm1(x);
    case Activation::kRelu: return x > 0 ? x : 0.0;
    case Activation::kLeakyRelu: return x > 0 ? x : kLeakySlope * x;
    case Activation::kTanh: return std::tanh(x);
    case Activation::kSigmoid: return Sigmoid(x);
    case Activation::kSoftplus:
      return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
    case Activation::kIdentity: return x;
  }
  return x;
}

double ActivationDerivative(Activation a, double x, double post) {
  switch (a) {
    case Activation::kElu: return x > 0 ? 1.0 : post + 1.0;
    case Activation::kRelu: return x > 0 ? 1.0 : 0.0;
    case Activation::kLeakyRelu: return x > 0 ? 1.0 : kLeakySlope;
    case Activation::kTanh: return 1.0 - post * post;
    case Activation::kSigmoid: return post * (1.0 - post);
    case Activation::kSoftplus: return Sigmoid(x);
    case Activation::kIdentity: return 1.0;
  }
  return 1.0;
}

void MlpArchitecture::Validate() const {
  Require(layer_widths.size() >= 2, "an MLP needs at least two layer widths");
  for (std::size_t w : layer_widths) {
    Require(w >= 1, "layer widths must be positive");
  }
}

std::size_t MlpArchitecture::LayerParameterCount(std::size_t layer) const {
  return fan_in(layer) * fan_out(layer) + fan_out(layer);
}

std::size_t MlpArchitecture::LayerOffset(std::size_t layer) const {
  std::size_t offset = 0;
  for (std::size_t l = 0; l < layer; ++l) offset += LayerParameterCount(l);
  return offset;
}

std::size_t MlpArchitecture::ParameterCount() const {
  return LayerOffset(num_layers());
}

ModelParams::ModelParams(MlpArchitecture arch) : arch_(std::move(arch)) {
  arch_.Validate();
  flat_.assign(arch_.ParameterCount(), 0.0);
}

ModelParams::ModelParams(MlpArchitecture arch, Vector flat)
    : arch_(std::move(arch)), flat_(std::move(flat)) {
  arch_.Validate();
  Require(flat_.size() == arch_.ParameterCount(),
          "parameter vector length " + std::to_string(flat_.size()) +
              " does not match architecture (" +
              std::to_string(arch_.ParameterCount()) + ")");
}

std::span<double> ModelParams::weights(std::size_t layer) {
  return std::span(flat_).subspan(arch_.LayerOffset(layer),
                                  arch_.fan_in(layer) * arch_.fan_out(layer));
}

std::span<const double> ModelParams::weights(std::size_t layer) const {
  return std::span(flat_).subspan(arch_.LayerOffset(layer),
                                  arch_.fan_in(layer) * arch_.fan_out(layer));
}

std::span<double> ModelParams::bias(std::size_t layer) {
  return std::span(flat_).subspan(
      arch_.LayerOffset(layer) + arch_.fan_in(layer) * arch_.fan_out(layer),
      arch_.fan_out(layer));
}

std::span<const double> ModelParams::bias(std::size_t layer) const {
  return std::span(flat_).subspan(
      arch_.LayerOffset(layer) + arch_.fan_in(layer) * arch_.fan_out(layer),
      arch_.fan_out(layer));
}

std::span<const double> ModelParams::layer(std::size_t layer) const {
  return std::span(flat_).subspan(arch_.LayerOffset(layer),
                                  arch_.LayerParameterCount(layer));
}

bool ModelParams::AllFinite() const {
  return std::all_of(flat_.begin(), flat_.end(),
                     [](double v) { return std::isfinite(v); });
}

double L2Distance(const ModelParams& a, const ModelParams& b) {
  Require(a.parameter_count() == b.parameter_count(),
          "parameter vectors differ in length");
  double s = 0.0;
  for (std::size_t i = 0; i < a.parameter_count(); ++i) {
    const double d = a.flat()[i] - b.flat()[i];
    s += d * d;
  }
  return std::sqrt(s);
}

ModelParams InitParams(const MlpArchitecture& arch, std::uint64_t seed) {
  ModelParams params(arch);
  Rng root = Rng(seed).Split("init");
  for (std::size_t l = 0; l < arch.num_layers(); ++l) {
    Rng rng = root.Split(l);
    const double scale = 1.0 / std::sqrt(static_cast<double>(arch.fan_in(l)));
    for (double& w : params.weights(l)) w = scale * rng.Normal();
  }
  return params;
}

namespace {

// Four partial sums: a fixed, vectorizable summation order.
double Dot(const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    s0 += a[k] * b[k];
    s1 += a[k + 1] * b[k + 1];
    s2 += a[k + 2] * b[k + 2];
    s3 += a[k + 3] * b[k + 3];
  }
  for (; k < n; ++k) s0 += a[k] * b[k];
  return (s0 + s1) + (s2 + s3);
}

double SquaredNorm(std::span<const double> v) {
  return Dot(v.data(), v.data(), v.size());
}

}  // namespace

void ForwardBatch(const ModelParams& params, const Matrix& inputs,
                  ForwardCache* cache) {
  const MlpArchitecture& arch = params.arch();
  Require(inputs.cols == arch.input_dim(),
          "input dimension " + std::to_string(inputs.cols) +
              " does not match network input " +
              std::to_string(arch.input_dim()));
  const std::size_t batch = inputs.rows;
  const std::size_t layers = arch.num_layers();
  cache->pre.resize(layers);
  cache->post.resize(layers + 1);
  cache->post[0] = inputs;
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t in = arch.fan_in(l);
    const std::size_t out = arch.fan_out(l);
    const Activation act =
        l + 1 == layers ? arch.output_activation : arch.activation;
    const double* w = params.weights(l).data();
    const double* b = params.bias(l).data();
    Matrix& pre = cache->pre[l];
    Matrix& post = cache->post[l + 1];
    pre = Matrix(batch, out);
    post = Matrix(batch, out);
    const Matrix& a = cache->post[l];
    for (std::size_t i = 0; i < batch; ++i) {
      const double* ai = a.data.data() + i * in;
      double* zi = pre.data.data() + i * out;
      double* hi = post.data.data() + i * out;
      for (std::size_t o = 0; o < out; ++o) {
        zi[o] = b[o] + Dot(w + o * in, ai, in);
        hi[o] = Activate(act, zi[o]);
      }
    }
  }
}

Vector Forward(const ModelParams& params, std::span<const double> x) {
  Matrix input(1, x.size());
  std::copy(x.begin(), x.end(), input.data.begin());
  ForwardCache cache;
  ForwardBatch(params, input, &cache);
  return cache.output().data;
}

Vector BackwardBatch(const ModelParams& params, const ForwardCache& cache,
                     const Matrix& output_grad, const BackwardOptions& options,
                     ModelParams* grad) {
  const MlpArchitecture& arch = params.arch();
  const std::size_t layers = arch.num_layers();
  const std::size_t batch = output_grad.rows;
  Require(output_grad.cols == arch.output_dim(), "output gradient width");
  Require(cache.pre.size() == layers && cache.output().rows == batch,
          "forward cache does not match the gradient batch");

  // deltas[l] = dLoss/dPre for layer l, one row per example.
  std::vector<Matrix> deltas(layers);
  {
    Matrix& d = deltas[layers - 1];
    d = output_grad;
    const Matrix& pre = cache.pre[layers - 1];
    const Matrix& post = cache.post[layers];
    for (std::size_t j = 0; j < d.data.size(); ++j) {
      d.data[j] *= ActivationDerivative(arch.output_activation, pre.data[j],
                                        post.data[j]);
    }
  }
  for (std::size_t l = layers - 1; l > 0; --l) {
    const std::size_t in = arch.fan_in(l);
    const std::size_t out = arch.fan_out(l);
    const double* w = params.weights(l).data();
    Matrix next(batch, in);
    for (std::size_t i = 0; i < batch; ++i) {
      const double* di = deltas[l].data.data() + i * out;
      double* ni = next.data.data() + i * in;
      for (std::size_t o = 0; o < out; ++o) {
        const double g = di[o];
        const double* wo = w + o * in;
        for (std::size_t k = 0; k < in; ++k) ni[k] += g * wo[k];
      }
    }
    const Matrix& pre = cache.pre[l - 1];
    const Matrix& post = cache.post[l];
    for (std::size_t j = 0; j < next.data.size(); ++j) {
      next.data[j] *=
          ActivationDerivative(arch.activation, pre.data[j], post.data[j]);
    }
    deltas[l - 1] = std::move(next);
  }

  Vector norms(batch, 0.0);
  for (std::size_t i = 0; i < batch; ++i) {
    double s = 0.0;
    for (std::size_t l = 0; l < layers; ++l) {
      s += SquaredNorm(deltas[l].row(i)) *
           (SquaredNorm(cache.post[l].row(i)) + 1.0);
    }
    norms[i] = std::sqrt(s);
  }

  for (std::size_t i = 0; i < batch; ++i) {
    double scale = 1.0;
    if (options.clip_norm > 0 && norms[i] > options.clip_norm) {
      scale = options.clip_norm / norms[i];
    }
    for (std::size_t l = 0; l < layers; ++l) {
      const std::size_t in = arch.fan_in(l);
      const std::size_t out = arch.fan_out(l);
      double* gw = grad->weights(l).data();
      double* gb = grad->bias(l).data();
      const double* di = deltas[l].data.data() + i * out;
      const double* ai = cache.post[l].data.data() + i * in;
      for (std::size_t o = 0; o < out; ++o) {
        const double g = scale * di[o];
        double* row = gw + o * in;
        for (std::size_t k = 0; k < in; ++k) row[k] += g * ai[k];
        gb[o] += g;
      }
    }
  }
  return norms;
}

Vector Softmax(std::span<const double> logits) {
  const double m = *std::max_element(logits.begin(), logits.end());
  Vector p(logits.size());
  double z = 0.0;
  for (std::size_t j = 0; j < logits.size(); ++j) {
    p[j] = std::exp(logits[j] - m);
    z += p[j];
  }
  for (double& v : p) v /= z;
  return p;
}

namespace {

// Cross-entropy of one row of logits and its gradient (softmax - onehot),
// written into grad_row.
double CrossEntropyRow(std::span<const double> logits, std::size_t label,
                       std::span<double> grad_row) {
  const double m = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (double v : logits) z += std::exp(v - m);
  const double log_z = m + std::log(z);
  for (std::size_t j = 0; j < logits.size(); ++j) {
    grad_row[j] = std::exp(logits[j] - log_z);
  }
  grad_row[label] -= 1.0;
  return log_z - logits[label];
}

}  // namespace

LossAndGrad CrossEntropyLossAndGrad(const ModelParams& params,
                                    std::span<const DataPoint> batch) {
  Require(!batch.empty(), "loss needs a nonempty batch");
  const MlpArchitecture& arch = params.arch();
  Matrix inputs(batch.size(), arch.input_dim());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    Require(batch[i].x.size() == arch.input_dim(), "feature dimension mismatch");
    Require(batch[i].y < arch.output_dim(), "label exceeds class count");
    std::copy(batch[i].x.begin(), batch[i].x.end(), inputs.row(i).begin());
  }
  ForwardCache cache;
  ForwardBatch(params, inputs, &cache);
  Matrix output_grad(batch.size(), arch.output_dim());
  double loss = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    loss += CrossEntropyRow(cache.output().row(i), batch[i].y,
                            output_grad.row(i));
  }
  const double n = static_cast<double>(batch.size());
  loss /= n;
  if (!std::isfinite(loss)) throw NumericalError("non-finite training loss");
  LossAndGrad result{loss, ModelParams(arch)};
  BackwardBatch(params, cache, output_grad, {}, &result.grad);
  for (double& g : result.grad.flat()) g /= n;
  return result;
}

double ExampleLoss(const ModelParams& params, const DataPoint& point) {
  const Vector logits = Forward(params, point.x);
  Require(point.y < logits.size(), "label exceeds class count");
  const double m = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (double v : logits) z += std::exp(v - m);
  return m + std::log(z) - logits[point.y];
}

Vector ZeroGradFraction(const ModelParams& params, const DataPoint& point) {
  const LossAndGrad lg =
      CrossEntropyLossAndGrad(params, std::span(&point, 1));
  const MlpArchitecture& arch = params.arch();
  Vector fractions(arch.num_layers());
  for (std::size_t l = 0; l < arch.num_layers(); ++l) {
    const auto g = lg.grad.layer(l);
    const auto zeros = std::count(g.begin(), g.end(), 0.0);
    fractions[l] = static_cast<double>(zeros) / static_cast<double>(g.size());
  }
  return fractions;
}

}  // namespace reconlab
