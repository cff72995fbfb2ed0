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

#ifndef BBRL_PENDULUM_H_
#define BBRL_PENDULUM_H_

#include <cstdint>
#include <optional>

#include "bbrl/environment.h"
#include "bbrl/rng.h"

namespace bbrl {

// Frictionless torque-limited pendulum swing-up. theta = 0 is upright.
struct PendulumConfig {
  double dt = 0.05;
  double gravity = 10.0;
  double mass = 1.0;
  double length = 1.0;
  double max_speed = 8.0;
  double max_torque = 2.0;
  int max_episode_steps = 200;

  void Validate() const;
};

struct PendulumState {
  double theta = 0.0;
  double theta_dot = 0.0;
};

// Wraps an angle into [-pi, pi).
double NormalizeAngle(double theta);

// (cos theta, sin theta, theta_dot).
Eigen::VectorXd PendulumObservation(const PendulumState& state);

struct PendulumTransition {
  PendulumState next;
  double reward;
};

// One semi-implicit Euler step. The reward is charged on the pre-step state:
// -(normalized theta^2 + 0.1 theta_dot^2 + 0.001 u^2), u clipped to bounds.
PendulumTransition PendulumStep(const PendulumState& state, double torque,
                                const PendulumConfig& config);

class Pendulum : public Environment {
 public:
  explicit Pendulum(PendulumConfig config = {}, std::uint64_t seed = 0);

  const EnvSpec& spec() const override { return spec_; }
  // theta ~ U(-pi, pi), theta_dot ~ U(-1, 1).
  Eigen::VectorXd Reset(std::optional<std::uint64_t> seed = {}) override;
  StepResult Step(const Eigen::VectorXd& action) override;
  std::unique_ptr<Environment> Clone() const override;
  std::string_view name() const override { return "pendulum"; }

  const PendulumState& state() const { return state_; }
  void set_state(const PendulumState& state) { state_ = state; }

 private:
  PendulumConfig config_;
  EnvSpec spec_;
  Rng rng_;
  PendulumState state_;
};

}  // namespace bbrl

#endif  // BBRL_PENDULUM_H_
