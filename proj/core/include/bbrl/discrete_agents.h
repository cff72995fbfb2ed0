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

#ifndef BBRL_DISCRETE_AGENTS_H_
#define BBRL_DISCRETE_AGENTS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "bbrl/adam.h"
#include "bbrl/bias_bandit.h"
#include "bbrl/mlp.h"
#include "bbrl/replay_buffer.h"
#include "bbrl/rng.h"
#include "bbrl/run_record.h"
#include "bbrl/synthetic_mdp.h"
#include "bbrl/target_rules.h"

namespace bbrl {

// Critic-only agents for the synthetic MDP. Each non-terminal state gets
// its own scalar critic Q^S(a); the actor is replaced by an argmax over M
// uniformly sampled actions.
enum class DiscreteAlgorithm {
  kQLearning,  // one critic, y = r + gamma * max_a Q^{S'}(a)
  kCdq,        // twin critics, min target
  kCdqMax,     // twin critics, max target
  kBeCdq,      // twin critics, min/max picked per episode by the bias bandit
};

DiscreteAlgorithm ParseDiscreteAlgorithm(std::string_view name);
std::string_view DiscreteAlgorithmName(DiscreteAlgorithm algorithm);

struct DiscreteAgentConfig {
  int hidden_units = 64;
  double learning_rate = 0.3;
  int batch_size = 64;
  int action_samples = 64;       // M
  double explore_epsilon = 0.1;  // epsilon' during training
  double gamma = 0.99;
  std::size_t buffer_capacity = 1'000'000;
  // Draw a separate minibatch for each twin critic.
  bool independent_batches = true;
  bool update_before_rollout = true;

  void Validate() const;
};

// Returns the candidate with the highest critic value; ties go to the
// lowest index.
double ArgmaxOverActions(const MlpParams& critic, const MlpSpec& spec,
                         const Eigen::RowVectorXd& candidates);
// Draws M actions from U(-1, 1) and returns the best under `critic`.
double ArgmaxSampledAction(const MlpParams& critic, const MlpSpec& spec,
                           int num_samples, Rng& rng);

struct StateCritic {
  MlpParams params;
  AdamState optimizer;
};

// critics[state][k]: one critic (Q-learning) or a twin pair per
// non-terminal state.
struct StateCriticBank {
  MlpSpec spec;
  std::array<std::vector<StateCritic>, 2> critics;

  double Value(MdpState state, int twin, double action) const;
};

struct EpisodeOutcome {
  double episode_return = 0.0;
  int length = 0;
  std::optional<int> bias_choice;
};

class DiscreteAgent {
 public:
  DiscreteAgent(DiscreteAlgorithm algorithm, const DiscreteAgentConfig& config,
                const BanditState& bandit, std::uint64_t seed);

  // Plays one epsilon'-greedy episode, stores its transitions, then takes
  // one gradient step per critic. BE-CDQ draws its arm before the episode
  // and feeds the undiscounted return to the bandit afterwards.
  EpisodeOutcome TrainEpisode(SyntheticMdp& env);

  // Greedy action (epsilon' = 0) in a non-terminal state.
  double GreedyAction(MdpState state, Rng& rng) const;

  // Mean undiscounted return of `episodes` greedy rollouts.
  double Evaluate(SyntheticMdp& env, int episodes, Rng& rng) const;

  // One minibatch gradient step on every critic with the given rule.
  void UpdateCritics(const TargetRule& rule);

  // Bootstrap targets for a batch drawn from `state`'s buffer, using the
  // current critics.
  Eigen::VectorXd Targets(const TransitionBatch& batch,
                          const TargetRule& rule, Rng& rng) const;

  DiscreteAlgorithm algorithm() const { return algorithm_; }
  const DiscreteAgentConfig& config() const { return config_; }
  const StateCriticBank& critics() const { return bank_; }
  StateCriticBank& mutable_critics() { return bank_; }
  const BanditState& bandit() const { return bandit_; }
  BanditState& mutable_bandit() { return bandit_; }
  const ReplayBuffer& buffer() const { return buffer_; }
  // Rule used by the most recent critic update.
  const TargetRule& last_rule() const { return last_rule_; }

 private:
  int num_twins() const;
  double ChooseAction(MdpState state);

  DiscreteAlgorithm algorithm_;
  DiscreteAgentConfig config_;
  StateCriticBank bank_;
  ReplayBuffer buffer_;
  BanditState bandit_;
  TargetRule last_rule_;
  Rng explore_rng_;
  Rng batch_rng_;
  Rng bandit_rng_;
};

struct DiscreteRunConfig {
  DiscreteAlgorithm algorithm = DiscreteAlgorithm::kCdq;
  DiscreteAgentConfig agent;
  BanditState bandit;
  SyntheticMdpConfig mdp;
  int episodes = 1000;
  int eval_every = 50;
  int eval_episodes = 10;
};

// Trains one seed and evaluates every `eval_every` episodes.
RunResult RunDiscrete(const DiscreteRunConfig& config, std::uint64_t seed);

}  // namespace bbrl

#endif  // BBRL_DISCRETE_AGENTS_H_
