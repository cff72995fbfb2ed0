// Copyright 2026 The bbrl Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bbrl/mlp.h"

#include <cmath>
#include <string>

#include "bbrl/errors.h"

namespace bbrl {
namespace {

void ApplyActivation(Activation activation, Eigen::MatrixXd& values) {
  switch (activation) {
    case Activation::kIdentity:
      return;
    case Activation::kTanh:
      // 1 - 2 / (e^{2x} + 1); Eigen vectorizes exp but not tanh for doubles.
      values = (1.0 - 2.0 / ((2.0 * values.array()).exp() + 1.0)).matrix();
      return;
    case Activation::kRelu:
      values = values.cwiseMax(0.0);
      return;
  }
}

// Multiplies `delta` in place by the activation derivative.
void ScaleByDerivative(Activation activation, const Eigen::MatrixXd& pre,
                       const Eigen::MatrixXd& post, Eigen::MatrixXd& delta) {
  switch (activation) {
    case Activation::kIdentity:
      return;
    case Activation::kTanh:
      delta.array() *= 1.0 - post.array().square();
      return;
    case Activation::kRelu:
      delta.array() *= (pre.array() > 0.0).cast<double>();
      return;
  }
}

Activation LayerActivation(const MlpSpec& spec, int layer) {
  return layer + 1 == spec.num_layers() ? spec.output_activation
                                        : spec.hidden_activation;
}

void CheckInputs(const MlpParams& params, const MlpSpec& spec,
                 const Eigen::MatrixXd& inputs) {
  CheckShape(params, spec);
  if (inputs.rows() != spec.input_dim()) {
    throw ConfigError("mlp input has " + std::to_string(inputs.rows()) +
                      " rows, expected " + std::to_string(spec.input_dim()));
  }
}

void CheckFinite(const Eigen::MatrixXd& values, int layer, const char* what) {
  // Any NaN/inf entry makes the sum non-finite.
  if (!std::isfinite(values.sum())) {
    throw NumericalError(std::string("non-finite ") + what + " in layer " +
                         std::to_string(layer));
  }
}

}  // namespace

Activation ParseActivation(std::string_view name) {
  if (name == "identity") return Activation::kIdentity;
  if (name == "tanh") return Activation::kTanh;
  if (name == "relu") return Activation::kRelu;
  throw ConfigError("unknown activation '" + std::string(name) + "'");
}

std::string_view ActivationName(Activation activation) {
  switch (activation) {
    case Activation::kIdentity:
      return "identity";
    case Activation::kTanh:
      return "tanh";
    case Activation::kRelu:
      return "relu";
  }
  return "?";
}

void MlpSpec::Validate() const {
  if (layer_sizes.size() < 2) {
    throw ConfigError("an MLP needs at least an input and an output size");
  }
  for (int size : layer_sizes) {
    if (size < 1) throw ConfigError("MLP layer sizes must be >= 1");
  }
}

MlpParams MlpParams::Zeros(const MlpSpec& spec) {
  spec.Validate();
  MlpParams params;
  for (int l = 0; l < spec.num_layers(); ++l) {
    const int in = spec.layer_sizes[l];
    const int out = spec.layer_sizes[l + 1];
    params.layers.push_back(
        {Eigen::MatrixXd::Zero(out, in), Eigen::VectorXd::Zero(out)});
  }
  return params;
}

std::size_t MlpParams::NumScalars() const {
  std::size_t n = 0;
  for (const auto& layer : layers) n += layer.weight.size() + layer.bias.size();
  return n;
}

bool MlpParams::AllFinite() const {
  for (const auto& layer : layers) {
    if (!layer.weight.allFinite() || !layer.bias.allFinite()) return false;
  }
  return true;
}

Gradient Gradient::ZerosLike(const MlpParams& params) {
  Gradient grad;
  for (const auto& layer : params.layers) {
    grad.layers.push_back(
        {Eigen::MatrixXd::Zero(layer.weight.rows(), layer.weight.cols()),
         Eigen::VectorXd::Zero(layer.bias.size())});
  }
  return grad;
}

bool Gradient::AllFinite() const {
  for (const auto& layer : layers) {
    if (!layer.weight.allFinite() || !layer.bias.allFinite()) return false;
  }
  return true;
}

bool SameShape(const std::vector<DenseLayer>& a,
               const std::vector<DenseLayer>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t l = 0; l < a.size(); ++l) {
    if (a[l].weight.rows() != b[l].weight.rows() ||
        a[l].weight.cols() != b[l].weight.cols() ||
        a[l].bias.size() != b[l].bias.size()) {
      return false;
    }
  }
  return true;
}

void CheckShape(const MlpParams& params, const MlpSpec& spec) {
  spec.Validate();
  if (static_cast<int>(params.layers.size()) != spec.num_layers()) {
    throw ConfigError("parameter layer count does not match MLP spec");
  }
  for (int l = 0; l < spec.num_layers(); ++l) {
    const auto& layer = params.layers[l];
    if (layer.weight.cols() != spec.layer_sizes[l] ||
        layer.weight.rows() != spec.layer_sizes[l + 1] ||
        layer.bias.size() != spec.layer_sizes[l + 1]) {
      throw ConfigError("parameter shape mismatch in layer " +
                        std::to_string(l));
    }
  }
}

std::vector<double> Flatten(const std::vector<DenseLayer>& layers) {
  std::vector<double> flat;
  for (const auto& layer : layers) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
        flat.push_back(layer.weight(r, c));
      }
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) {
      flat.push_back(layer.bias(r));
    }
  }
  return flat;
}

double& ScalarAt(std::vector<DenseLayer>& layers, std::size_t index) {
  for (auto& layer : layers) {
    const auto nw = static_cast<std::size_t>(layer.weight.size());
    if (index < nw) {
      const auto cols = static_cast<std::size_t>(layer.weight.cols());
      return layer.weight(index / cols, index % cols);
    }
    index -= nw;
    const auto nb = static_cast<std::size_t>(layer.bias.size());
    if (index < nb) return layer.bias(index);
    index -= nb;
  }
  throw ContractError("parameter index out of range");
}

MlpParams InitParams(const MlpSpec& spec, Rng& rng) {
  MlpParams params = MlpParams::Zeros(spec);
  for (auto& layer : params.layers) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer.weight.cols()));
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
        layer.weight(r, c) = rng.Uniform(-bound, bound);
      }
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) {
      layer.bias(r) = rng.Uniform(-bound, bound);
    }
  }
  return params;
}

ForwardTrace ForwardBatch(const MlpParams& params, const MlpSpec& spec,
                          const Eigen::MatrixXd& inputs) {
  CheckInputs(params, spec, inputs);
  ForwardTrace trace;
  trace.activations.reserve(params.layers.size() + 1);
  trace.pre_activations.reserve(params.layers.size());
  trace.activations.push_back(inputs);
  for (int l = 0; l < spec.num_layers(); ++l) {
    const auto& layer = params.layers[l];
    Eigen::MatrixXd pre = layer.weight * trace.activations.back();
    pre.colwise() += layer.bias;
    Eigen::MatrixXd post = pre;
    ApplyActivation(LayerActivation(spec, l), post);
    CheckFinite(post, l, "activation");
    trace.pre_activations.push_back(std::move(pre));
    trace.activations.push_back(std::move(post));
  }
  return trace;
}

Eigen::MatrixXd EvaluateBatch(const MlpParams& params, const MlpSpec& spec,
                              const Eigen::MatrixXd& inputs) {
  CheckInputs(params, spec, inputs);
  Eigen::MatrixXd values = inputs;
  for (int l = 0; l < spec.num_layers(); ++l) {
    const auto& layer = params.layers[l];
    Eigen::MatrixXd next = layer.weight * values;
    next.colwise() += layer.bias;
    ApplyActivation(LayerActivation(spec, l), next);
    CheckFinite(next, l, "activation");
    values = std::move(next);
  }
  return values;
}

void BackwardBatch(const MlpParams& params, const MlpSpec& spec,
                   const ForwardTrace& trace, const Eigen::MatrixXd& upstream,
                   Gradient* param_grad, Eigen::MatrixXd* input_grad) {
  CheckShape(params, spec);
  const Eigen::MatrixXd& output = trace.output();
  if (upstream.rows() != output.rows() || upstream.cols() != output.cols()) {
    throw ConfigError("upstream gradient shape does not match network output");
  }
  if (param_grad != nullptr) *param_grad = Gradient::ZerosLike(params);

  Eigen::MatrixXd delta = upstream;
  for (int l = spec.num_layers() - 1; l >= 0; --l) {
    ScaleByDerivative(LayerActivation(spec, l), trace.pre_activations[l],
                      trace.activations[l + 1], delta);
    CheckFinite(delta, l, "gradient");
    if (param_grad != nullptr) {
      auto& g = param_grad->layers[l];
      g.weight.noalias() = delta * trace.activations[l].transpose();
      g.bias = delta.rowwise().sum();
    }
    if (l > 0 || input_grad != nullptr) {
      delta = params.layers[l].weight.transpose() * delta;
    }
  }
  if (input_grad != nullptr) {
    CheckFinite(delta, 0, "input gradient");
    *input_grad = std::move(delta);
  }
}

Eigen::VectorXd Forward(const MlpParams& params, const MlpSpec& spec,
                        const Eigen::VectorXd& input) {
  return EvaluateBatch(params, spec, input).col(0);
}

Gradient BackwardParams(const MlpParams& params, const MlpSpec& spec,
                        const Eigen::VectorXd& input,
                        const Eigen::VectorXd& upstream) {
  const ForwardTrace trace = ForwardBatch(params, spec, input);
  Gradient grad;
  BackwardBatch(params, spec, trace, upstream, &grad, nullptr);
  return grad;
}

Eigen::VectorXd BackwardInput(const MlpParams& params, const MlpSpec& spec,
                              const Eigen::VectorXd& input,
                              const Eigen::VectorXd& upstream) {
  const ForwardTrace trace = ForwardBatch(params, spec, input);
  Eigen::MatrixXd grad;
  BackwardBatch(params, spec, trace, upstream, nullptr, &grad);
  return grad.col(0);
}

}  // namespace bbrl
