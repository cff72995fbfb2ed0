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

#ifndef BBRL_ENVIRONMENT_H_
#define BBRL_ENVIRONMENT_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace bbrl {

struct EnvSpec {
  int state_dim = 1;
  int action_dim = 1;
  Eigen::VectorXd action_low;
  Eigen::VectorXd action_high;
  int max_episode_steps = 1;

  void Validate() const;
};

struct StepResult {
  Eigen::VectorXd next_state;
  double reward = 0.0;
  // True on a terminal transition. Running out of max_episode_steps is a
  // time limit, not a terminal, and is handled by the training loop.
  bool done = false;
};

// Common interface for the stepwise simulators. Each instance owns its RNG.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual const EnvSpec& spec() const = 0;
  // Starts a new episode. Passing a seed reseeds the environment RNG first.
  virtual Eigen::VectorXd Reset(std::optional<std::uint64_t> seed = {}) = 0;
  // Actions outside the bounds are clipped.
  virtual StepResult Step(const Eigen::VectorXd& action) = 0;
  virtual std::unique_ptr<Environment> Clone() const = 0;
  virtual std::string_view name() const = 0;
};

Eigen::VectorXd ClipToBounds(const Eigen::VectorXd& action,
                             const EnvSpec& spec);

using Policy = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Mean undiscounted return of `episodes` rollouts of `policy`, each cut at
// the horizon. The policy should be noise-free.
double EvaluatePolicy(const Policy& policy, Environment& env, int episodes);

}  // namespace bbrl

#endif  // BBRL_ENVIRONMENT_H_
