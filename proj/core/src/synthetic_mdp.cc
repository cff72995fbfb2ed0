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

#include "bbrl/synthetic_mdp.h"

#include <algorithm>
#include <cmath>

#include "bbrl/errors.h"

namespace bbrl {

void SyntheticMdpConfig::Validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma) || !std::isfinite(mu)) {
    throw ConfigError("synthetic MDP needs finite mu and sigma >= 0");
  }
}

Eigen::VectorXd EncodeMdpState(MdpState state) {
  Eigen::VectorXd obs = Eigen::VectorXd::Zero(2);
  if (state == MdpState::kS0) obs(0) = 1.0;
  if (state == MdpState::kS1) obs(1) = 1.0;
  return obs;
}

MdpState DecodeMdpState(const Eigen::VectorXd& observation) {
  if (observation.size() != 2) {
    throw ConfigError("synthetic MDP observations are 2-dimensional");
  }
  if (observation(0) == 1.0 && observation(1) == 0.0) return MdpState::kS0;
  if (observation(0) == 0.0 && observation(1) == 1.0) return MdpState::kS1;
  throw ContractError("observation is not a non-terminal MDP state");
}

MdpTransition MdpStep(MdpState state, double action,
                      const SyntheticMdpConfig& config, Rng& rng) {
  action = std::clamp(action, -1.0, 1.0);
  switch (state) {
    case MdpState::kS0:
      if (action < 0.0) return {MdpState::kT0, 0.0, true};
      return {MdpState::kS1, 0.0, false};
    case MdpState::kS1: {
      double reward = config.mu;
      if (config.sigma > 0.0) reward += rng.Uniform(-config.sigma, config.sigma);
      return {MdpState::kT1, reward, true};
    }
    case MdpState::kT0:
    case MdpState::kT1:
      break;
  }
  throw ContractError("cannot step the synthetic MDP from a terminal state");
}

SyntheticMdp::SyntheticMdp(SyntheticMdpConfig config, std::uint64_t seed)
    : config_(config), rng_(seed) {
  config_.Validate();
  spec_.state_dim = 2;
  spec_.action_dim = 1;
  spec_.action_low = Eigen::VectorXd::Constant(1, -1.0);
  spec_.action_high = Eigen::VectorXd::Constant(1, 1.0);
  spec_.max_episode_steps = 2;
}

Eigen::VectorXd SyntheticMdp::Reset(std::optional<std::uint64_t> seed) {
  if (seed) rng_ = Rng(*seed);
  state_ = MdpState::kS0;
  return EncodeMdpState(state_);
}

StepResult SyntheticMdp::Step(const Eigen::VectorXd& action) {
  if (action.size() != 1) throw ConfigError("synthetic MDP action is scalar");
  const MdpTransition tr = MdpStep(state_, action(0), config_, rng_);
  state_ = tr.next;
  return {EncodeMdpState(tr.next), tr.reward, tr.done};
}

std::unique_ptr<Environment> SyntheticMdp::Clone() const {
  return std::make_unique<SyntheticMdp>(*this);
}

}  // namespace bbrl
