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

#include "bbrl/adam.h"

#include <cmath>

#include "bbrl/errors.h"

namespace bbrl {

AdamState MakeAdamState(const MlpParams& params, const AdamConfig& config) {
  AdamState state;
  state.m = Gradient::ZerosLike(params);
  state.v = Gradient::ZerosLike(params);
  state.config = config;
  return state;
}

void AdamStep(MlpParams& params, const Gradient& grad, AdamState& state) {
  if (!SameShape(params.layers, grad.layers) ||
      !SameShape(params.layers, state.m.layers) ||
      !SameShape(params.layers, state.v.layers)) {
    throw ConfigError("Adam: gradient/moment shapes do not match parameters");
  }
  if (!grad.AllFinite()) throw NumericalError("Adam: non-finite gradient");

  const AdamConfig& c = state.config;
  state.t += 1;
  const double t = static_cast<double>(state.t);
  const double correction1 = 1.0 - std::pow(c.beta1, t);
  const double correction2 = 1.0 - std::pow(c.beta2, t);

  auto step = [&](auto p, auto g, auto m, auto v) {
    m = c.beta1 * m + (1.0 - c.beta1) * g;
    v = c.beta2 * v + (1.0 - c.beta2) * g.square();
    p -= c.learning_rate * (m / correction1) /
         ((v / correction2).sqrt() + c.epsilon_num);
  };
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    step(params.layers[l].weight.array(), grad.layers[l].weight.array(),
         state.m.layers[l].weight.array(), state.v.layers[l].weight.array());
    step(params.layers[l].bias.array(), grad.layers[l].bias.array(),
         state.m.layers[l].bias.array(), state.v.layers[l].bias.array());
  }
}

}  // namespace bbrl
