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

#include "bbrl/discrete_agents.h"

#include <string>

#include "bbrl/errors.h"

namespace bbrl {
namespace {

constexpr std::array<MdpState, 2> kLiveStates = {MdpState::kS0,
                                                 MdpState::kS1};

std::size_t StateIndex(MdpState state) {
  if (IsTerminal(state)) throw ContractError("terminal states have no critic");
  return static_cast<std::size_t>(state);
}

}  // namespace

DiscreteAlgorithm ParseDiscreteAlgorithm(std::string_view name) {
  if (name == "qlearning") return DiscreteAlgorithm::kQLearning;
  if (name == "cdq") return DiscreteAlgorithm::kCdq;
  if (name == "cdq-max") return DiscreteAlgorithm::kCdqMax;
  if (name == "be-cdq") return DiscreteAlgorithm::kBeCdq;
  throw ConfigError("unknown synthetic-MDP algorithm '" + std::string(name) +
                    "'");
}

std::string_view DiscreteAlgorithmName(DiscreteAlgorithm algorithm) {
  switch (algorithm) {
    case DiscreteAlgorithm::kQLearning:
      return "qlearning";
    case DiscreteAlgorithm::kCdq:
      return "cdq";
    case DiscreteAlgorithm::kCdqMax:
      return "cdq-max";
    case DiscreteAlgorithm::kBeCdq:
      return "be-cdq";
  }
  return "?";
}

void DiscreteAgentConfig::Validate() const {
  if (hidden_units < 1 || batch_size < 1 || action_samples < 1) {
    throw ConfigError("hidden units, batch size and M must be positive");
  }
  if (!(learning_rate >= 0.0)) throw ConfigError("learning rate must be >= 0");
  if (!(explore_epsilon >= 0.0 && explore_epsilon <= 1.0)) {
    throw ConfigError("explore epsilon must lie in [0, 1]");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ConfigError("gamma must lie in [0, 1]");
  }
}

double ArgmaxOverActions(const MlpParams& critic, const MlpSpec& spec,
                         const Eigen::RowVectorXd& candidates) {
  if (candidates.size() == 0) throw ContractError("no candidate actions");
  const Eigen::MatrixXd values = EvaluateBatch(critic, spec, candidates);
  Eigen::Index best = 0;
  for (Eigen::Index j = 1; j < values.cols(); ++j) {
    if (values(0, j) > values(0, best)) best = j;
  }
  return candidates(best);
}

double ArgmaxSampledAction(const MlpParams& critic, const MlpSpec& spec,
                           int num_samples, Rng& rng) {
  if (num_samples < 1) throw ContractError("need at least one action sample");
  Eigen::RowVectorXd candidates(num_samples);
  for (int i = 0; i < num_samples; ++i) candidates(i) = rng.Uniform(-1.0, 1.0);
  return ArgmaxOverActions(critic, spec, candidates);
}

double StateCriticBank::Value(MdpState state, int twin, double action) const {
  const auto& critic =
      critics[StateIndex(state)][static_cast<std::size_t>(twin)];
  return Forward(critic.params, spec, Eigen::VectorXd::Constant(1, action))(0);
}

DiscreteAgent::DiscreteAgent(DiscreteAlgorithm algorithm,
                             const DiscreteAgentConfig& config,
                             const BanditState& bandit, std::uint64_t seed)
    : algorithm_(algorithm),
      config_(config),
      buffer_(config.buffer_capacity),
      bandit_(bandit),
      explore_rng_(Rng::Substream(seed, "explore")),
      batch_rng_(Rng::Substream(seed, "batch")),
      bandit_rng_(Rng::Substream(seed, "bandit")) {
  config_.Validate();
  if (algorithm_ == DiscreteAlgorithm::kBeCdq) bandit_.Validate();
  bank_.spec = {{1, config_.hidden_units, 1},
                Activation::kTanh,
                Activation::kIdentity};
  Rng init_rng = Rng::Substream(seed, "init");
  AdamConfig adam;
  adam.learning_rate = config_.learning_rate;
  for (MdpState s : kLiveStates) {
    for (int k = 0; k < num_twins(); ++k) {
      MlpParams params = InitParams(bank_.spec, init_rng);
      AdamState opt = MakeAdamState(params, adam);
      bank_.critics[StateIndex(s)].push_back({std::move(params), std::move(opt)});
    }
  }
  last_rule_ = algorithm_ == DiscreteAlgorithm::kCdqMax ? TargetRule::Max()
                                                        : TargetRule::Min();
}

int DiscreteAgent::num_twins() const {
  return algorithm_ == DiscreteAlgorithm::kQLearning ? 1 : 2;
}

double DiscreteAgent::GreedyAction(MdpState state, Rng& rng) const {
  const auto& critic = bank_.critics[StateIndex(state)][0];
  return ArgmaxSampledAction(critic.params, bank_.spec, config_.action_samples,
                             rng);
}

double DiscreteAgent::ChooseAction(MdpState state) {
  if (explore_rng_.Uniform(0.0, 1.0) < config_.explore_epsilon) {
    return explore_rng_.Uniform(-1.0, 1.0);
  }
  return GreedyAction(state, explore_rng_);
}

Eigen::VectorXd DiscreteAgent::Targets(const TransitionBatch& batch,
                                       const TargetRule& rule,
                                       Rng& rng) const {
  // One M-sample scan per distinct next state, shared by the whole batch.
  std::array<std::optional<std::array<double, 2>>, 2> next_values;
  auto values_at = [&](MdpState next) -> const std::array<double, 2>& {
    auto& slot = next_values[StateIndex(next)];
    if (slot) return *slot;
    const auto& critics = bank_.critics[StateIndex(next)];
    const int m = config_.action_samples;
    if (algorithm_ == DiscreteAlgorithm::kQLearning) {
      Eigen::RowVectorXd candidates(m);
      for (int i = 0; i < m; ++i) candidates(i) = rng.Uniform(-1.0, 1.0);
      const double q =
          EvaluateBatch(critics[0].params, bank_.spec, candidates).maxCoeff();
      slot = std::array<double, 2>{q, q};
    } else {
      const Eigen::VectorXd a = Eigen::VectorXd::Constant(
          1, ArgmaxSampledAction(critics[0].params, bank_.spec, m, rng));
      slot = std::array<double, 2>{Forward(critics[0].params, bank_.spec, a)(0),
                                   Forward(critics[1].params, bank_.spec, a)(0)};
    }
    return *slot;
  };

  const auto n = static_cast<Eigen::Index>(batch.size());
  Eigen::VectorXd y(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double r = batch.rewards(j);
    if (batch.done[static_cast<std::size_t>(j)]) {
      y(j) = r;
      continue;
    }
    const auto& q = values_at(DecodeMdpState(batch.next_states.col(j)));
    y(j) = algorithm_ == DiscreteAlgorithm::kQLearning
               ? r + config_.gamma * q[0]
               : ComputeTarget(rule, r, false, config_.gamma, q[0], q[1]);
  }
  return y;
}

void DiscreteAgent::UpdateCritics(const TargetRule& rule) {
  last_rule_ = rule;
  if (buffer_.empty()) return;
  const auto batch_size = static_cast<std::size_t>(config_.batch_size);

  // Targets for every twin come from the pre-update critics. Each sample
  // trains the critic of the state it was collected in.
  struct Pending {
    std::size_t state;
    std::size_t twin;
    Eigen::RowVectorXd actions;
    Eigen::VectorXd targets;
  };
  std::vector<Pending> pending;
  TransitionBatch batch;
  Eigen::VectorXd targets;
  for (int k = 0; k < num_twins(); ++k) {
    if (k == 0 || config_.independent_batches) {
      batch = buffer_.SampleBatch(batch_size, batch_rng_);
      targets = Targets(batch, rule, batch_rng_);
    }
    for (MdpState s : kLiveStates) {
      std::vector<Eigen::Index> rows;
      for (Eigen::Index j = 0; j < batch.states.cols(); ++j) {
        if (DecodeMdpState(batch.states.col(j)) == s) rows.push_back(j);
      }
      if (rows.empty()) continue;
      Pending p{StateIndex(s), static_cast<std::size_t>(k),
                Eigen::RowVectorXd(static_cast<Eigen::Index>(rows.size())),
                Eigen::VectorXd(static_cast<Eigen::Index>(rows.size()))};
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto c = static_cast<Eigen::Index>(i);
        p.actions(c) = batch.actions(0, rows[i]);
        p.targets(c) = targets(rows[i]);
      }
      pending.push_back(std::move(p));
    }
  }

  for (const Pending& p : pending) {
    StateCritic& critic = bank_.critics[p.state][p.twin];
    const ForwardTrace trace = ForwardBatch(critic.params, bank_.spec, p.actions);
    const double n = static_cast<double>(p.targets.size());
    const Eigen::MatrixXd upstream =
        (2.0 / n) * (trace.output() - p.targets.transpose());
    Gradient grad;
    BackwardBatch(critic.params, bank_.spec, trace, upstream, &grad, nullptr);
    AdamStep(critic.params, grad, critic.optimizer);
  }
}

EpisodeOutcome DiscreteAgent::TrainEpisode(SyntheticMdp& env) {
  EpisodeOutcome outcome;
  TargetRule rule = algorithm_ == DiscreteAlgorithm::kCdqMax
                        ? TargetRule::Max()
                        : TargetRule::Min();
  if (algorithm_ == DiscreteAlgorithm::kBeCdq) {
    const int arm = ChooseArm(bandit_, bandit_rng_);
    outcome.bias_choice = arm;
    rule = arm == kOverestimate ? TargetRule::Max() : TargetRule::Min();
  }

  if (config_.update_before_rollout) UpdateCritics(rule);

  Eigen::VectorXd obs = env.Reset();
  bool done = false;
  while (!done) {
    const MdpState s = env.state();
    const double a = ChooseAction(s);
    const StepResult step = env.Step(Eigen::VectorXd::Constant(1, a));
    buffer_.Push(
        {obs, Eigen::VectorXd::Constant(1, a), step.reward, step.next_state,
         step.done});
    outcome.episode_return += step.reward;
    outcome.length += 1;
    obs = step.next_state;
    done = step.done;
  }

  if (!config_.update_before_rollout) UpdateCritics(rule);

  if (algorithm_ == DiscreteAlgorithm::kBeCdq) {
    UpdateArm(bandit_, *outcome.bias_choice, outcome.episode_return);
    AdvanceEpsilon(bandit_, outcome.length);
  }
  return outcome;
}

double DiscreteAgent::Evaluate(SyntheticMdp& env, int episodes,
                               Rng& rng) const {
  if (episodes < 1) throw ContractError("need at least one eval episode");
  double total = 0.0;
  for (int e = 0; e < episodes; ++e) {
    env.Reset();
    bool done = false;
    while (!done) {
      const double a = GreedyAction(env.state(), rng);
      const StepResult step = env.Step(Eigen::VectorXd::Constant(1, a));
      total += step.reward;
      done = step.done;
    }
  }
  return total / episodes;
}

RunResult RunDiscrete(const DiscreteRunConfig& config, std::uint64_t seed) {
  if (config.episodes < 1 || config.eval_every < 1 || config.eval_episodes < 1) {
    throw ConfigError("episodes, eval_every and eval_episodes must be >= 1");
  }
  DiscreteAgent agent(config.algorithm, config.agent, config.bandit, seed);
  SyntheticMdp env(config.mdp, Rng::Substream(seed, "env").NextSeed());
  SyntheticMdp eval_env(config.mdp,
                        Rng::Substream(seed, "eval-env").NextSeed());
  Rng eval_rng = Rng::Substream(seed, "eval");
  const bool banded = config.algorithm == DiscreteAlgorithm::kBeCdq;

  RunResult result;
  std::int64_t env_steps = 0;
  std::optional<int> last_choice;
  for (int episode = 1; episode <= config.episodes; ++episode) {
    const EpisodeOutcome outcome = agent.TrainEpisode(env);
    env_steps += outcome.length;
    result.episode_returns.push_back(outcome.episode_return);
    if (banded) {
      last_choice = outcome.bias_choice;
      result.episode_choices.push_back(*outcome.bias_choice);
      result.episode_epsilons.push_back(agent.bandit().epsilon);
    }
    if (episode % config.eval_every == 0) {
      EvalRecord record;
      record.env_step = env_steps;
      record.episode = episode;
      record.mean_return =
          agent.Evaluate(eval_env, config.eval_episodes, eval_rng);
      record.seed = seed;
      if (banded) {
        record.bandit_choice = last_choice;
        record.epsilon = agent.bandit().epsilon;
      }
      result.records.push_back(record);
    }
  }
  return result;
}

}  // namespace bbrl
