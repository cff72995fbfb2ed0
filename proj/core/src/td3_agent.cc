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


#include "bbrl/td3_agent.h"

#include <algorithm>

#include "bbrl/errors.h"

namespace bbrl {
namespace {

MlpSpec MakeSpec(int input_dim, const std::vector<int>& hidden, int output_dim,
                 Activation output_activation) {
  MlpSpec spec;
  spec.layer_sizes.push_back(input_dim);
  spec.layer_sizes.insert(spec.layer_sizes.end(), hidden.begin(), hidden.end());
  spec.layer_sizes.push_back(output_dim);
  spec.hidden_activation = Activation::kRelu;
  spec.output_activation = output_activation;
  spec.Validate();
  return spec;
}

Eigen::VectorXd HalfRange(const EnvSpec& env) {
  return 0.5 * (env.action_high - env.action_low);
}

}  // namespace

void Td3Config::Validate() const {
  if (actor_hidden.empty() || critic_hidden.empty()) {
    throw ConfigError("actor and critic need at least one hidden layer");
  }
  for (int width : actor_hidden) {
    if (width < 1) throw ConfigError("hidden widths must be positive");
  }
  for (int width : critic_hidden) {
    if (width < 1) throw ConfigError("hidden widths must be positive");
  }
  if (!(actor_lr > 0.0) || !(critic_lr > 0.0)) {
    throw ConfigError("learning rates must be positive");
  }
  if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError("tau must lie in (0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ConfigError("gamma must lie in [0, 1]");
  }
  if (batch_size < 1) throw ConfigError("batch size must be >= 1");
  if (policy_delay < 1) throw ConfigError("policy delay d must be >= 1");
  if (explore_sigma < 0.0) {
    throw ConfigError("exploration noise std must be non-negative");
  }
  if (smoothing.sigma_tilde < 0.0 || smoothing.noise_clip < 0.0) {
    throw ConfigError("smoothing noise std and clip must be non-negative");
  }
  if (buffer_capacity < 1) throw ConfigError("buffer capacity must be >= 1");
}

Td3Agent::Td3Agent(const EnvSpec& env, const Td3Config& config,
                   std::uint64_t seed)
    : env_(env),
      config_(config),
      buffer_(config.buffer_capacity),
      explore_rng_(Rng::Substream(seed, "explore")),
      batch_rng_(Rng::Substream(seed, "batch")) {
  env_.Validate();
  config_.Validate();
  config_.smoothing.action_low = env_.action_low;
  config_.smoothing.action_high = env_.action_high;
  actor_spec_ = MakeSpec(env_.state_dim, config_.actor_hidden, env_.action_dim,
                         Activation::kTanh);
  critic_spec_ = MakeSpec(env_.state_dim + env_.action_dim,
                          config_.critic_hidden, 1, Activation::kIdentity);

  Rng init = Rng::Substream(seed, "init");
  actor_ = InitParams(actor_spec_, init);
  for (int i = 0; i < 2; ++i) critics_.push_back(InitParams(critic_spec_, init));
  actor_target_ = actor_;
  critic_targets_ = critics_;

  AdamConfig actor_adam;
  actor_adam.learning_rate = config_.actor_lr;
  actor_opt_ = MakeAdamState(actor_, actor_adam);
  AdamConfig critic_adam;
  critic_adam.learning_rate = config_.critic_lr;
  for (const MlpParams& critic : critics_) {
    critic_opts_.push_back(MakeAdamState(critic, critic_adam));
  }
}

Eigen::MatrixXd Td3Agent::ActorActions(const Eigen::MatrixXd& states) const {
  return ScaleToBounds(EvaluateBatch(actor_, actor_spec_, states),
                       env_.action_low, env_.action_high);
}

Eigen::VectorXd Td3Agent::Act(const Eigen::VectorXd& state) const {
  return ActorActions(state).col(0);
}

Eigen::VectorXd Td3Agent::ExploreAction(const Eigen::VectorXd& state) {
  const MlpParams& net =
      config_.explore_with_target_actor ? actor_target_ : actor_;
  Eigen::VectorXd action = ScaleToBounds(
      Forward(net, actor_spec_, state), env_.action_low, env_.action_high);
  for (Eigen::Index i = 0; i < action.size(); ++i) {
    if (config_.explore_sigma > 0.0) {
      action(i) += explore_rng_.Normal(0.0, config_.explore_sigma);
    }
  }
  return ClipToBounds(action, env_);
}

Eigen::VectorXd Td3Agent::RandomAction() {
  Eigen::VectorXd action(env_.action_dim);
  for (Eigen::Index i = 0; i < action.size(); ++i) {
    action(i) = explore_rng_.Uniform(env_.action_low(i), env_.action_high(i));
  }
  return action;
}

Eigen::MatrixXd Td3Agent::CriticInputs(const Eigen::MatrixXd& states,
                                       const Eigen::MatrixXd& actions) const {
  Eigen::MatrixXd inputs(states.rows() + actions.rows(), states.cols());
  inputs.topRows(states.rows()) = states;
  inputs.bottomRows(actions.rows()) = actions;
  return inputs;
}

Eigen::VectorXd Td3Agent::CriticValues(int index, const Eigen::MatrixXd& states,
                                       const Eigen::MatrixXd& actions) const {
  return EvaluateBatch(critics_.at(index), critic_spec_,
                       CriticInputs(states, actions))
      .row(0)
      .transpose();
}

Eigen::VectorXd Td3Agent::CriticTargets(const TransitionBatch& batch,
                                        const TargetRule& rule) {
  const Eigen::MatrixXd next_actions =
      SmoothTargetActions(actor_target_, actor_spec_, batch.next_states,
                          config_.smoothing, batch_rng_);
  const Eigen::MatrixXd inputs = CriticInputs(batch.next_states, next_actions);
  const Eigen::MatrixXd q1 =
      EvaluateBatch(critic_targets_[0], critic_spec_, inputs);
  const Eigen::MatrixXd q2 =
      EvaluateBatch(critic_targets_[1], critic_spec_, inputs);
  Eigen::VectorXd targets(batch.size());
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    targets(col) = ComputeTarget(rule, batch.rewards(col), batch.done[j],
                                 config_.gamma, q1(0, col), q2(0, col));
  }
  return targets;
}

double Td3Agent::CriticLoss(int index, const TransitionBatch& batch,
                            const Eigen::VectorXd& targets) const {
  const Eigen::VectorXd q = CriticValues(index, batch.states, batch.actions);
  return (q - targets).squaredNorm() / static_cast<double>(targets.size());
}

void Td3Agent::FitCritics(const TransitionBatch& batch,
                          const Eigen::VectorXd& targets) {
  if (batch.size() == 0) throw ContractError("empty critic batch");
  const Eigen::MatrixXd inputs = CriticInputs(batch.states, batch.actions);
  const double n = static_cast<double>(batch.size());
  for (int i = 0; i < 2; ++i) {
    const ForwardTrace trace = ForwardBatch(critics_[i], critic_spec_, inputs);
    const Eigen::MatrixXd upstream =
        (2.0 / n) * (trace.output() - targets.transpose());
    Gradient grad = Gradient::ZerosLike(critics_[i]);
    BackwardBatch(critics_[i], critic_spec_, trace, upstream, &grad, nullptr);
    AdamStep(critics_[i], grad, critic_opts_[i]);
  }
}

void Td3Agent::UpdateActorWith(const Eigen::MatrixXd& states,
                               const ActionGradientFn& action_gradient) {
  if (states.cols() == 0) throw ContractError("empty actor batch");
  const ForwardTrace trace = ForwardBatch(actor_, actor_spec_, states);
  const Eigen::MatrixXd actions =
      ScaleToBounds(trace.output(), env_.action_low, env_.action_high);
  const Eigen::MatrixXd dq_da = action_gradient(states, actions);
  if (dq_da.rows() != actions.rows() || dq_da.cols() != actions.cols()) {
    throw ContractError("action gradient has the wrong shape");
  }
  // Loss is -mean Q; the unit-to-env scaling contributes the half range.
  const double n = static_cast<double>(states.cols());
  const Eigen::MatrixXd upstream =
      (-1.0 / n) * (HalfRange(env_).asDiagonal() * dq_da);
  Gradient grad = Gradient::ZerosLike(actor_);
  BackwardBatch(actor_, actor_spec_, trace, upstream, &grad, nullptr);
  AdamStep(actor_, grad, actor_opt_);
  ++actor_steps_;
}

void Td3Agent::UpdateActor(const Eigen::MatrixXd& states) {
  UpdateActorWith(states, [this](const Eigen::MatrixXd& s,
                                 const Eigen::MatrixXd& a) {
    const ForwardTrace trace =
        ForwardBatch(critics_[0], critic_spec_, CriticInputs(s, a));
    const Eigen::MatrixXd ones =
        Eigen::MatrixXd::Ones(1, static_cast<Eigen::Index>(s.cols()));
    Eigen::MatrixXd input_grad;
    BackwardBatch(critics_[0], critic_spec_, trace, ones, nullptr, &input_grad);
    return Eigen::MatrixXd(input_grad.bottomRows(a.rows()));
  });
}

void Td3Agent::UpdateTargets() {
  EmaUpdate(actor_target_, actor_, config_.tau);
  for (int i = 0; i < 2; ++i) {
    EmaUpdate(critic_targets_[i], critics_[i], config_.tau);
  }
}

void Td3Agent::TrainStep(const TargetRule& rule) {
  const TransitionBatch batch = buffer_.SampleBatch(
      static_cast<std::size_t>(config_.batch_size), batch_rng_);
  const Eigen::VectorXd targets = CriticTargets(batch, rule);
  FitCritics(batch, targets);
  ++critic_steps_;
  if (critic_steps_ % config_.policy_delay == 0) {
    UpdateActor(batch.states);
    UpdateTargets();
  }
}

}  // namespace bbrl
