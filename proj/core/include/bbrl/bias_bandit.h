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

#ifndef BBRL_BIAS_BANDIT_H_
#define BBRL_BIAS_BANDIT_H_

#include <array>
#include <cstdint>
#include <string_view>

#include "bbrl/rng.h"

namespace bbrl {

// Arm 0 is the underestimating (min) target, arm 1 the overestimating (max)
// target.
inline constexpr int kUnderestimate = 0;
inline constexpr int kOverestimate = 1;
inline constexpr double kMaxEpsilon = 0.9;

enum class EpsilonSchedule { kHard, kSoft };

enum class BanditMode {
  kLearned,       // epsilon-greedy on Qb
  kHeuristicMax,  // epsilon-greedy, greedy arm pinned to overestimation
  kHeuristicMin,  // epsilon-greedy, greedy arm pinned to underestimation
  kFixedMin,      // always arm 0, no exploration
  kFixedMax,      // always arm 1, no exploration
};

BanditMode ParseBanditMode(std::string_view name);
std::string_view BanditModeName(BanditMode mode);
EpsilonSchedule ParseEpsilonSchedule(std::string_view name);
std::string_view EpsilonScheduleName(EpsilonSchedule schedule);
// Learned and heuristic modes draw from the bandit; fixed modes do not.
bool UsesBandit(BanditMode mode);

// Two-armed bandit over the estimation bias, one decision per episode.
struct BanditState {
  std::array<double, 2> qb{0.0, 0.0};
  double epsilon = kMaxEpsilon;
  double epsilon_decay = 0.99;
  double alpha = 0.25;
  int reset_period = 1500;
  std::int64_t episode_count = 0;
  EpsilonSchedule schedule = EpsilonSchedule::kHard;
  int k_eps = 50;  // soft schedule horizon

  // Throws ConfigError on out-of-range hyperparameters.
  void Validate() const;
};

// With probability epsilon a uniformly random arm, otherwise argmax Qb with
// ties broken uniformly.
int ChooseArm(const BanditState& state, Rng& rng);

// Same exploration as ChooseArm, but the greedy arm is `greedy_arm`
// regardless of Qb.
int ForceArm(const BanditState& state, int greedy_arm, Rng& rng);

// Arm selection for a configured mode.
int SelectArm(const BanditState& state, BanditMode mode, Rng& rng);

// Qb[arm] += alpha * (episode_return - Qb[arm]).
void UpdateArm(BanditState& state, int arm, double episode_return);

// Counts the finished episode; every reset_period-th episode restores
// epsilon to 0.9, otherwise epsilon *= epsilon_decay.
void AdvanceEpsilonHard(BanditState& state);

// epsilon = min(epsilon * decay * max(k_eps / k, 1), 0.9) where k is the
// length of the episode that just ended.
void AdvanceEpsilonSoft(BanditState& state, int episode_length);

// Dispatches on state.schedule.
void AdvanceEpsilon(BanditState& state, int episode_length);

}  // namespace bbrl

#endif  // BBRL_BIAS_BANDIT_H_
