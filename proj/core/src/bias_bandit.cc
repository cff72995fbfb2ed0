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

#include "bbrl/bias_bandit.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "bbrl/errors.h"

namespace bbrl {

BanditMode ParseBanditMode(std::string_view name) {
  if (name == "learned") return BanditMode::kLearned;
  if (name == "heuristic-max") return BanditMode::kHeuristicMax;
  if (name == "heuristic-min") return BanditMode::kHeuristicMin;
  if (name == "fixed-min") return BanditMode::kFixedMin;
  if (name == "fixed-max") return BanditMode::kFixedMax;
  throw ConfigError("unknown bandit mode '" + std::string(name) + "'");
}

std::string_view BanditModeName(BanditMode mode) {
  switch (mode) {
    case BanditMode::kLearned:
      return "learned";
    case BanditMode::kHeuristicMax:
      return "heuristic-max";
    case BanditMode::kHeuristicMin:
      return "heuristic-min";
    case BanditMode::kFixedMin:
      return "fixed-min";
    case BanditMode::kFixedMax:
      return "fixed-max";
  }
  return "?";
}

EpsilonSchedule ParseEpsilonSchedule(std::string_view name) {
  if (name == "hard") return EpsilonSchedule::kHard;
  if (name == "soft") return EpsilonSchedule::kSoft;
  throw ConfigError("unknown epsilon schedule '" + std::string(name) + "'");
}

std::string_view EpsilonScheduleName(EpsilonSchedule schedule) {
  return schedule == EpsilonSchedule::kHard ? "hard" : "soft";
}

bool UsesBandit(BanditMode mode) {
  return mode == BanditMode::kLearned || mode == BanditMode::kHeuristicMax ||
         mode == BanditMode::kHeuristicMin;
}

void BanditState::Validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("bandit.alpha must lie in (0, 1]");
  }
  if (!(epsilon_decay > 0.0 && epsilon_decay < 1.0)) {
    throw ConfigError("bandit.eps_decay must lie in (0, 1)");
  }
  if (reset_period < 1) throw ConfigError("bandit.reset_period must be >= 1");
  if (k_eps < 1) throw ConfigError("bandit.k_eps must be >= 1");
  if (!(epsilon >= 0.0 && epsilon <= kMaxEpsilon)) {
    throw ConfigError("bandit epsilon must lie in [0, 0.9]");
  }
}

int ChooseArm(const BanditState& state, Rng& rng) {
  if (rng.Uniform(0.0, 1.0) < state.epsilon) {
    return static_cast<int>(rng.Index(2));
  }
  if (state.qb[0] == state.qb[1]) return static_cast<int>(rng.Index(2));
  return state.qb[1] > state.qb[0] ? 1 : 0;
}

int ForceArm(const BanditState& state, int greedy_arm, Rng& rng) {
  if (greedy_arm != 0 && greedy_arm != 1) {
    throw ContractError("greedy arm must be 0 or 1");
  }
  if (rng.Uniform(0.0, 1.0) < state.epsilon) {
    return static_cast<int>(rng.Index(2));
  }
  return greedy_arm;
}

int SelectArm(const BanditState& state, BanditMode mode, Rng& rng) {
  switch (mode) {
    case BanditMode::kLearned:
      return ChooseArm(state, rng);
    case BanditMode::kHeuristicMax:
      return ForceArm(state, kOverestimate, rng);
    case BanditMode::kHeuristicMin:
      return ForceArm(state, kUnderestimate, rng);
    case BanditMode::kFixedMin:
      return kUnderestimate;
    case BanditMode::kFixedMax:
      return kOverestimate;
  }
  return kUnderestimate;
}

void UpdateArm(BanditState& state, int arm, double episode_return) {
  if (arm != 0 && arm != 1) throw ContractError("bandit arm must be 0 or 1");
  if (!std::isfinite(episode_return)) {
    throw NumericalError("non-finite episode return fed to the bias bandit");
  }
  double& q = state.qb[static_cast<std::size_t>(arm)];
  q += state.alpha * (episode_return - q);
}

void AdvanceEpsilonHard(BanditState& state) {
  state.episode_count += 1;
  if (state.episode_count % state.reset_period == 0) {
    state.epsilon = kMaxEpsilon;
  } else {
    state.epsilon *= state.epsilon_decay;
  }
}

void AdvanceEpsilonSoft(BanditState& state, int episode_length) {
  if (episode_length < 1) {
    throw ContractError("episode length must be >= 1 for the soft schedule");
  }
  state.episode_count += 1;
  const double stretch =
      std::max(static_cast<double>(state.k_eps) / episode_length, 1.0);
  state.epsilon =
      std::min(state.epsilon * state.epsilon_decay * stretch, kMaxEpsilon);
}

void AdvanceEpsilon(BanditState& state, int episode_length) {
  if (state.schedule == EpsilonSchedule::kHard) {
    AdvanceEpsilonHard(state);
  } else {
    AdvanceEpsilonSoft(state, episode_length);
  }
}

}  // namespace bbrl
