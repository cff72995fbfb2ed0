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

#ifndef BBRL_ADAM_H_
#define BBRL_ADAM_H_

#include <cstdint>

#include "bbrl/mlp.h"

namespace bbrl {

struct AdamConfig {
  double learning_rate = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon_num = 1e-8;
};

// First/second moment estimates for one parameter set.
struct AdamState {
  Gradient m;
  Gradient v;
  std::int64_t t = 0;
  AdamConfig config;
};

AdamState MakeAdamState(const MlpParams& params, const AdamConfig& config);

// One bias-corrected Adam step (descent on `grad`). Increments state.t.
// Throws NumericalError on a non-finite gradient, ConfigError on a shape
// mismatch.
void AdamStep(MlpParams& params, const Gradient& grad, AdamState& state);

}  // namespace bbrl

#endif  // BBRL_ADAM_H_
