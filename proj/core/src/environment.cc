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

#include "bbrl/environments.h"

#include "bbrl/errors.h"

namespace bbrl {

void EnvSpec::Validate() const {
  if (state_dim < 1 || action_dim < 1 || max_episode_steps < 1) {
    throw ConfigError("environment dimensions and horizon must be positive");
  }
  if (action_low.size() != action_dim || action_high.size() != action_dim) {
    throw ConfigError("action bounds must have action_dim entries");
  }
  if ((action_low.array() >= action_high.array()).any()) {
    throw ConfigError("action_low must be below action_high componentwise");
  }
}

Eigen::VectorXd ClipToBounds(const Eigen::VectorXd& action,
                             const EnvSpec& spec) {
  if (action.size() != spec.action_dim) {
    throw ConfigError("action has wrong dimension");
  }
  return action.cwiseMax(spec.action_low).cwiseMin(spec.action_high);
}

double EvaluatePolicy(const Policy& policy, Environment& env, int episodes) {
  if (episodes < 1) throw ConfigError("need at least one evaluation episode");
  double total = 0.0;
  for (int e = 0; e < episodes; ++e) {
    Eigen::VectorXd state = env.Reset();
    for (int t = 0; t < env.spec().max_episode_steps; ++t) {
      StepResult step = env.Step(policy(state));
      total += step.reward;
      if (step.done) break;
      state = std::move(step.next_state);
    }
  }
  return total / episodes;
}

std::unique_ptr<Environment> MakeEnvironment(const EnvironmentOptions& options,
                                             std::uint64_t seed) {
  if (options.name == "synthetic-mdp") {
    return std::make_unique<SyntheticMdp>(options.mdp, seed);
  }
  if (options.name == "pendulum") {
    return std::make_unique<Pendulum>(options.pendulum, seed);
  }
  throw ConfigError("unknown environment '" + options.name +
                    "' (expected synthetic-mdp or pendulum)");
}

}  // namespace bbrl
