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


#ifndef BBRL_BE_TD3_H_
#define BBRL_BE_TD3_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "bbrl/bias_bandit.h"
#include "bbrl/environments.h"
#include "bbrl/run_record.h"
#include "bbrl/td3_agent.h"

namespace bbrl {

// Continuous-control variants. All share the TD3 machinery and differ only
// in how the target rule is picked each episode.
enum class Td3Algorithm {
  kTd3,       // min, always
  kTd3Max,    // max, always
  kTd3Avg,    // average of the twins
  kTd3Rand,   // one twin, chosen per episode
  kBeTd3,     // bandit-learned min/max
  kTd3Hm,     // epsilon-greedy around max
  kTd3Hmin,   // epsilon-greedy around min
};

Td3Algorithm ParseTd3Algorithm(std::string_view name);
std::string_view Td3AlgorithmName(Td3Algorithm algorithm);
// Arm policy behind each variant; average and random-mask use kFixedMin as a
// placeholder and never consult it.
BanditMode ModeOf(Td3Algorithm algorithm);

struct Td3RunConfig {
  Td3Algorithm algorithm = Td3Algorithm::kBeTd3;
  // Overrides the arm policy implied by `algorithm` when set; lets any mode
  // drive the min/max choice.
  std::optional<BanditMode> mode;
  Td3Config agent;
  BanditState bandit;
  EnvironmentOptions env;
  std::int64_t max_env_steps = 100'000;
  std::int64_t warmup_steps = 1000;
  std::int64_t eval_every = 5000;
  int eval_episodes = 10;

  void Validate() const;
};

// Called after every environment step once the agent has been updated.
using Td3StepObserver =
    std::function<void(std::int64_t env_step, const Td3Agent& agent)>;

// Full training loop: per episode pick the target rule, then act (uniformly
// during warm-up, with Gaussian noise afterwards), store the transition and
// take one training step per environment step once warm-up is over. The
// bandit sees the undiscounted episode return at the end of each episode.
// Evaluates every `eval_every` steps on a separate environment instance.
RunResult RunBeTd3(const Td3RunConfig& config, std::uint64_t seed,
                   const Td3StepObserver& observer = {});

}  // namespace bbrl

#endif  // BBRL_BE_TD3_H_
