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

#ifndef BBRL_MLP_H_
#define BBRL_MLP_H_

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "bbrl/rng.h"

namespace bbrl {

enum class Activation { kIdentity, kTanh, kRelu };

Activation ParseActivation(std::string_view name);
std::string_view ActivationName(Activation activation);

// Topology of a fully connected net. `layer_sizes` lists the input width
// first and the output width last.
struct MlpSpec {
  std::vector<int> layer_sizes;
  Activation hidden_activation = Activation::kRelu;
  Activation output_activation = Activation::kIdentity;

  int input_dim() const { return layer_sizes.front(); }
  int output_dim() const { return layer_sizes.back(); }
  int num_layers() const { return static_cast<int>(layer_sizes.size()) - 1; }

  // Throws ConfigError unless there are at least two sizes, all >= 1.
  void Validate() const;
};

// One affine map: out = weight * in + bias, weight is (out x in).
struct DenseLayer {
  Eigen::MatrixXd weight;
  Eigen::VectorXd bias;
};

struct MlpParams {
  std::vector<DenseLayer> layers;

  static MlpParams Zeros(const MlpSpec& spec);
  std::size_t NumScalars() const;
  bool AllFinite() const;
};

// d(loss)/d(params); always shaped like the MlpParams it was taken from.
struct Gradient {
  std::vector<DenseLayer> layers;

  static Gradient ZerosLike(const MlpParams& params);
  bool AllFinite() const;
};

bool SameShape(const std::vector<DenseLayer>& a,
               const std::vector<DenseLayer>& b);
// Throws ConfigError if `params` does not realize `spec`.
void CheckShape(const MlpParams& params, const MlpSpec& spec);

// Row-major walk over (weight, bias) of each layer; used for finite
// differences and bit-exact comparisons.
std::vector<double> Flatten(const std::vector<DenseLayer>& layers);
double& ScalarAt(std::vector<DenseLayer>& layers, std::size_t index);

// Weights and biases drawn from U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
MlpParams InitParams(const MlpSpec& spec, Rng& rng);

// Per-layer values of a batched forward pass, kept for backprop.
// Columns are samples. activations[0] is the input, activations[l + 1] the
// post-activation output of layer l.
struct ForwardTrace {
  std::vector<Eigen::MatrixXd> activations;
  std::vector<Eigen::MatrixXd> pre_activations;

  const Eigen::MatrixXd& output() const { return activations.back(); }
};

ForwardTrace ForwardBatch(const MlpParams& params, const MlpSpec& spec,
                          const Eigen::MatrixXd& inputs);
// Same values as ForwardBatch(...).output() without keeping the trace.
Eigen::MatrixXd EvaluateBatch(const MlpParams& params, const MlpSpec& spec,
                              const Eigen::MatrixXd& inputs);

// Reverse pass for L = sum over samples of <upstream[:, j], output[:, j]>.
// Either output pointer may be null to skip that half of the work.
void BackwardBatch(const MlpParams& params, const MlpSpec& spec,
                   const ForwardTrace& trace, const Eigen::MatrixXd& upstream,
                   Gradient* param_grad, Eigen::MatrixXd* input_grad);

// Single-sample conveniences.
Eigen::VectorXd Forward(const MlpParams& params, const MlpSpec& spec,
                        const Eigen::VectorXd& input);
Gradient BackwardParams(const MlpParams& params, const MlpSpec& spec,
                        const Eigen::VectorXd& input,
                        const Eigen::VectorXd& upstream);
Eigen::VectorXd BackwardInput(const MlpParams& params, const MlpSpec& spec,
                              const Eigen::VectorXd& input,
                              const Eigen::VectorXd& upstream);

}  // namespace bbrl

#endif  // BBRL_MLP_H_
