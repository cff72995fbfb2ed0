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


#include "bbrl/be_td3.h"

#include <string>

#include "bbrl/errors.h"

namespace bbrl {
Td3Algorithm ParseTd3Algorithm(std::string_view name) {
  if (name == "td3") return Td3Algorithm::kTd3;
  if (name == "td3-max") return Td3Algorithm::kTd3Max;
  if (name == "td3-avg") return Td3Algorithm::kTd3Avg;
  if (name == "td3-rand") return Td3Algorithm::kTd3Rand;
  if (name == "be-td3") return Td3Algorithm::kBeTd3;
  if (name == "td3-hm") return Td3Algorithm::kTd3Hm;
  if (name == "td3-hmin") return Td3Algorithm::kTd3Hmin;
  throw ConfigError("unknown continuous-control algorithm '" +
                    std::string(name) + "'");
}

std::string_view Td3AlgorithmName(Td3Algorithm algorithm) {
  switch (algorithm) {
    case Td3Algorithm::kTd3:
      return "td3";
    case Td3Algorithm::kTd3Max:
      return "td3-max";
    case Td3Algorithm::kTd3Avg:
      return "td3-avg";
    case Td3Algorithm::kTd3Rand:
      return "td3-rand";
    case Td3Algorithm::kBeTd3:
      return "be-td3";
    case Td3Algorithm::kTd3Hm:
      return "td3-hm";
    case Td3Algorithm::kTd3Hmin:
      return "td3-hmin";
  }
  return "?";
}

BanditMode ModeOf(Td3Algorithm algorithm) {
  switch (algorithm) {
    case Td3Algorithm::kTd3Max:
      return BanditMode::kFixedMax;
    case Td3Algorithm::kBeTd3:
      return BanditMode::kLearned;
    case Td3Algorithm::kTd3Hm:
      return BanditMode::kHeuristicMax;
    case Td3Algorithm::kTd3Hmin:
      return BanditMode::kHeuristicMin;
    default:
      return BanditMode::kFixedMin;
  }
}

void Td3RunConfig::Validate() const {
  agent.Validate();
  bandit.Validate();
  if (max_env_steps < 1) throw ConfigError("max_env_steps must be >= 1");
  if (warmup_steps < 0) throw ConfigError("warmup_steps must be >= 0");
  if (eval_every < 1) throw ConfigError("eval_every must be >= 1");
  if (eval_episodes < 1) throw ConfigError("eval_episodes must be >= 1");
}

RunResult RunBeTd3(const Td3RunConfig& config, std::uint64_t seed,
                   const Td3StepObserver& observer) {
  config.Validate();
  std::unique_ptr<Environment> env =
      MakeEnvironment(config.env, Rng::Substream(seed, "env").NextSeed());
  std::unique_ptr<Environment> eval_env =
      MakeEnvironment(config.env, Rng::Substream(seed, "eval-env").NextSeed());
  Td3Agent agent(env->spec(), config.agent, seed);
  Rng bandit_rng = Rng::Substream(seed, "bandit");
  BanditState bandit = config.bandit;
  const BanditMode mode = config.mode.value_or(ModeOf(config.algorithm));
  const bool banded = UsesBandit(mode);

  auto next_rule = [&](int* arm) {
    *arm = -1;
    switch (config.algorithm) {
      case Td3Algorithm::kTd3Avg:
        return TargetRule::Average();
      case Td3Algorithm::kTd3Rand: {
        TargetRule rule = TargetRule::RandomMask(1);
        ResampleMask(rule, bandit_rng);
        return rule;
      }
      default:
        *arm = SelectArm(bandit, mode, bandit_rng);
        return *arm == kOverestimate ? TargetRule::Max() : TargetRule::Min();
    }
  };

  RunResult result;
  int arm = -1;
  TargetRule rule = next_rule(&arm);
  Eigen::VectorXd state = env->Reset();
  double episode_return = 0.0;
  int episode_length = 0;
  std::int64_t episodes = 0;
  std::optional<int> last_choice;
  const int horizon = env->spec().max_episode_steps;

  for (std::int64_t step = 1; step <= config.max_env_steps; ++step) {
    const Eigen::VectorXd action = step <= config.warmup_steps
                                       ? agent.RandomAction()
                                       : agent.ExploreAction(state);
    StepResult outcome = env->Step(action);
    episode_return += outcome.reward;
    ++episode_length;
    agent.Observe({state, action, outcome.reward, outcome.next_state,
                   outcome.done});
    if (step > config.warmup_steps) agent.TrainStep(rule);
    if (observer) observer(step, agent);
    state = std::move(outcome.next_state);

    if (outcome.done || episode_length >= horizon) {
      ++episodes;
      result.episode_returns.push_back(episode_return);
      if (banded) {
        UpdateArm(bandit, arm, episode_return);
        AdvanceEpsilon(bandit, episode_length);
        last_choice = arm;
        result.episode_choices.push_back(arm);
        result.episode_epsilons.push_back(bandit.epsilon);
      }
      rule = next_rule(&arm);
      state = env->Reset();
      episode_return = 0.0;
      episode_length = 0;
    }

    if (step % config.eval_every == 0) {
      EvalRecord record;
      record.env_step = step;
      record.episode = episodes;
      record.mean_return = EvaluatePolicy(
          [&agent](const Eigen::VectorXd& s) { return agent.Act(s); },
          *eval_env, config.eval_episodes);
      record.seed = seed;
      if (banded) {
        record.bandit_choice = last_choice;
        record.epsilon = bandit.epsilon;
      }
      result.records.push_back(record);
    }
  }
  return result;
}

}  // namespace bbrl
