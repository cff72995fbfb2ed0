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

#ifndef BBRL_SYNTHETIC_MDP_H_
#define BBRL_SYNTHETIC_MDP_H_

#include <cstdint>
#include <optional>

#include "bbrl/environment.h"
#include "bbrl/rng.h"

namespace bbrl {

// Four-state chain with a continuous action in [-1, 1]:
//
//   S0 --(a < 0)--> T0            reward 0
//   S0 --(a >= 0)--> S1           reward 0
//   S1 --(any a)--> T1            reward mu + U(-sigma, sigma)
//
// Observations are one-hot over the non-terminal states {S0, S1}.
struct SyntheticMdpConfig {
  double mu = 1.0;
  double sigma = 5.0;

  void Validate() const;
};

enum class MdpState { kS0 = 0, kS1 = 1, kT0 = 2, kT1 = 3 };

inline bool IsTerminal(MdpState s) {
  return s == MdpState::kT0 || s == MdpState::kT1;
}

// One-hot encoding for S0/S1; terminals encode as all zeros.
Eigen::VectorXd EncodeMdpState(MdpState state);
// Inverse of EncodeMdpState for non-terminal states.
MdpState DecodeMdpState(const Eigen::VectorXd& observation);

struct MdpTransition {
  MdpState next;
  double reward;
  bool done;
};

// Pure transition function. `action` is clipped to [-1, 1]. Throws
// ContractError when called on a terminal state.
MdpTransition MdpStep(MdpState state, double action,
                      const SyntheticMdpConfig& config, Rng& rng);

class SyntheticMdp : public Environment {
 public:
  explicit SyntheticMdp(SyntheticMdpConfig config, std::uint64_t seed = 0);

  const EnvSpec& spec() const override { return spec_; }
  Eigen::VectorXd Reset(std::optional<std::uint64_t> seed = {}) override;
  StepResult Step(const Eigen::VectorXd& action) override;
  std::unique_ptr<Environment> Clone() const override;
  std::string_view name() const override { return "synthetic-mdp"; }

  MdpState state() const { return state_; }
  const SyntheticMdpConfig& config() const { return config_; }

 private:
  SyntheticMdpConfig config_;
  EnvSpec spec_;
  Rng rng_;
  MdpState state_ = MdpState::kS0;
};

}  // namespace bbrl

#endif  // BBRL_SYNTHETIC_MDP_H_
