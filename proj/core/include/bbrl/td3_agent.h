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

#ifndef BBRL_TD3_AGENT_H_
#define BBRL_TD3_AGENT_H_

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "bbrl/adam.h"
#include "bbrl/environment.h"
#include "bbrl/mlp.h"
#include "bbrl/replay_buffer.h"
#include "bbrl/rng.h"
#include "bbrl/target_rules.h"

namespace bbrl {

struct Td3Config {
  std::vector<int> actor_hidden{256, 256};
  std::vector<int> critic_hidden{256, 256};
  double actor_lr = 3e-4;
  double critic_lr = 3e-4;
  double tau = 0.005;
  double gamma = 0.99;
  int batch_size = 256;
  int policy_delay = 2;          // d
  double explore_sigma = 0.2;    // raw action units
  SmoothingConfig smoothing;     // bounds are filled in from the env
  std::size_t buffer_capacity = 1'000'000;
  // Act from the target actor instead of the live one while exploring.
  bool explore_with_target_actor = false;

  void Validate() const;
};

// Maps a batch of states and actions to dQ/da (same shape as actions).
using ActionGradientFn = std::function<Eigen::MatrixXd(
    const Eigen::MatrixXd& states, const Eigen::MatrixXd& actions)>;

// Twin-critic deterministic actor-critic with target networks, smoothed
// targets and delayed actor updates. The critic update takes the target
// rule as an argument so the caller decides the estimation bias.
//
// Randomness: "init" seeds the networks, "explore" the behaviour noise and
// warm-up actions, "batch" the minibatch indices and target smoothing noise.
class Td3Agent {
 public:
  Td3Agent(const EnvSpec& env, const Td3Config& config, std::uint64_t seed);

  // Noise-free action of the live actor, in env units.
  Eigen::VectorXd Act(const Eigen::VectorXd& state) const;
  // Actor action plus N(0, explore_sigma), clipped to the bounds.
  Eigen::VectorXd ExploreAction(const Eigen::VectorXd& state);
  // Uniform over the action box.
  Eigen::VectorXd RandomAction();

  void Observe(const Transition& transition) { buffer_.Push(transition); }

  // Samples a minibatch, updates both critics with `rule`, and every d-th
  // call also updates the actor and all three target networks.
  void TrainStep(const TargetRule& rule);

  // Shared bootstrap targets y for a batch under `rule`; draws the
  // smoothing noise from the batch stream.
  Eigen::VectorXd CriticTargets(const TransitionBatch& batch,
                                const TargetRule& rule);
  // One Adam step per critic on the mean squared error to `targets`.
  void FitCritics(const TransitionBatch& batch, const Eigen::VectorXd& targets);
  // Mean squared error of critic `index` (0 or 1) on a batch.
  double CriticLoss(int index, const TransitionBatch& batch,
                    const Eigen::VectorXd& targets) const;

  // Ascends the mean of Q1(s, mu(s)) over `states` with one Adam step.
  void UpdateActor(const Eigen::MatrixXd& states);
  // Same step with an arbitrary critic supplied through its action gradient.
  void UpdateActorWith(const Eigen::MatrixXd& states,
                       const ActionGradientFn& action_gradient);
  // EMA of all three target networks.
  void UpdateTargets();

  // Q_i(s, a) for a batch; index 0 or 1.
  Eigen::VectorXd CriticValues(int index, const Eigen::MatrixXd& states,
                               const Eigen::MatrixXd& actions) const;
  // Live actor actions for a batch, in env units.
  Eigen::MatrixXd ActorActions(const Eigen::MatrixXd& states) const;

  const EnvSpec& env_spec() const { return env_; }
  const Td3Config& config() const { return config_; }
  const MlpSpec& actor_spec() const { return actor_spec_; }
  const MlpSpec& critic_spec() const { return critic_spec_; }
  const MlpParams& actor() const { return actor_; }
  const MlpParams& actor_target() const { return actor_target_; }
  const MlpParams& critic(int index) const { return critics_.at(index); }
  const MlpParams& critic_target(int index) const {
    return critic_targets_.at(index);
  }
  MlpParams& mutable_actor() { return actor_; }
  MlpParams& mutable_critic(int index) { return critics_.at(index); }
  const ReplayBuffer& buffer() const { return buffer_; }
  // Critic steps taken so far (t).
  std::int64_t critic_steps() const { return critic_steps_; }
  std::int64_t actor_steps() const { return actor_steps_; }

 private:
  Eigen::MatrixXd CriticInputs(const Eigen::MatrixXd& states,
                               const Eigen::MatrixXd& actions) const;

  EnvSpec env_;
  Td3Config config_;
  MlpSpec actor_spec_;
  MlpSpec critic_spec_;
  MlpParams actor_;
  MlpParams actor_target_;
  std::vector<MlpParams> critics_;
  std::vector<MlpParams> critic_targets_;
  AdamState actor_opt_;
  std::vector<AdamState> critic_opts_;
  ReplayBuffer buffer_;
  Rng explore_rng_;
  Rng batch_rng_;
  std::int64_t critic_steps_ = 0;
  std::int64_t actor_steps_ = 0;
};

}  // namespace bbrl

#endif  // BBRL_TD3_AGENT_H_
