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

#include "bbrl/pendulum.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bbrl/errors.h"

namespace bbrl {

void PendulumConfig::Validate() const {
  if (!(dt > 0.0) || !(mass > 0.0) || !(length > 0.0) ||
      !(max_speed > 0.0) || !(max_torque > 0.0) || max_episode_steps < 1) {
    throw ConfigError("pendulum constants must be positive");
  }
}

double NormalizeAngle(double theta) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(theta + std::numbers::pi, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  return wrapped - std::numbers::pi;
}

Eigen::VectorXd PendulumObservation(const PendulumState& state) {
  Eigen::VectorXd obs(3);
  obs << std::cos(state.theta), std::sin(state.theta), state.theta_dot;
  return obs;
}

PendulumTransition PendulumStep(const PendulumState& state, double torque,
                                const PendulumConfig& config) {
  const double u = std::clamp(torque, -config.max_torque, config.max_torque);
  const double angle = NormalizeAngle(state.theta);
  const double cost = angle * angle +
                      0.1 * state.theta_dot * state.theta_dot +
                      0.001 * u * u;

  const double g = config.gravity;
  const double m = config.mass;
  const double l = config.length;
  double theta_dot =
      state.theta_dot + (3.0 * g / (2.0 * l) * std::sin(state.theta) +
                         3.0 / (m * l * l) * u) *
                            config.dt;
  theta_dot = std::clamp(theta_dot, -config.max_speed, config.max_speed);
  const double theta = state.theta + theta_dot * config.dt;
  return {{theta, theta_dot}, -cost};
}

Pendulum::Pendulum(PendulumConfig config, std::uint64_t seed)
    : config_(config), rng_(seed) {
  config_.Validate();
  spec_.state_dim = 3;
  spec_.action_dim = 1;
  spec_.action_low = Eigen::VectorXd::Constant(1, -config_.max_torque);
  spec_.action_high = Eigen::VectorXd::Constant(1, config_.max_torque);
  spec_.max_episode_steps = config_.max_episode_steps;
}

Eigen::VectorXd Pendulum::Reset(std::optional<std::uint64_t> seed) {
  if (seed) rng_ = Rng(*seed);
  state_.theta = rng_.Uniform(-std::numbers::pi, std::numbers::pi);
  state_.theta_dot = rng_.Uniform(-1.0, 1.0);
  return PendulumObservation(state_);
}

StepResult Pendulum::Step(const Eigen::VectorXd& action) {
  if (action.size() != 1) throw ConfigError("pendulum action is scalar");
  const PendulumTransition tr = PendulumStep(state_, action(0), config_);
  state_ = tr.next;
  return {PendulumObservation(state_), tr.reward, false};
}

std::unique_ptr<Environment> Pendulum::Clone() const {
  return std::make_unique<Pendulum>(*this);
}

}  // namespace bbrl
