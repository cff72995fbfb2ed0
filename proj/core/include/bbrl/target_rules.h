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

#ifndef BBRL_TARGET_RULES_H_
#define BBRL_TARGET_RULES_H_

#include <string_view>

#include <Eigen/Dense>

#include "bbrl/mlp.h"
#include "bbrl/rng.h"

namespace bbrl {

// How the two critic estimates at (s', a') are folded into a bootstrap
// target:
//   kMin         y = r + gamma * min(q1, q2)      (clipped double Q)
//   kMax         y = r + gamma * max(q1, q2)      (max critic)
//   kAverage     y = r + gamma * (q1 + q2) / 2
//   kRandomMask  y = r + gamma * (beta ? q1 : q2), beta redrawn per episode
// Terminal transitions always get y = r.
enum class TargetRuleKind { kMin, kMax, kAverage, kRandomMask };

struct TargetRule {
  TargetRuleKind kind = TargetRuleKind::kMin;
  int beta = 1;  // kRandomMask only: 1 selects q1, 0 selects q2

  static TargetRule Min() { return {TargetRuleKind::kMin, 1}; }
  static TargetRule Max() { return {TargetRuleKind::kMax, 1}; }
  static TargetRule Average() { return {TargetRuleKind::kAverage, 1}; }
  static TargetRule RandomMask(int beta) {
    return {TargetRuleKind::kRandomMask, beta};
  }
};

// "min" | "max" | "avg" | "random".
TargetRuleKind ParseTargetRule(std::string_view name);
std::string_view TargetRuleName(TargetRuleKind kind);

// Throws NumericalError on non-finite r/q1/q2, ContractError on gamma outside
// [0, 1] or beta outside {0, 1}.
double ComputeTarget(const TargetRule& rule, double reward, bool done,
                     double gamma, double q1, double q2);

// Draws the per-episode mask for kRandomMask (no-op for other kinds).
void ResampleMask(TargetRule& rule, Rng& rng);

// Maps a tanh-range vector in [-1, 1] affinely onto [low, high].
Eigen::MatrixXd ScaleToBounds(const Eigen::MatrixXd& unit,
                              const Eigen::VectorXd& low,
                              const Eigen::VectorXd& high);

struct SmoothingConfig {
  double sigma_tilde = 0.2;  // std of the target policy noise
  double noise_clip = 0.5;   // c
  Eigen::VectorXd action_low;
  Eigen::VectorXd action_high;
};

// a~ = clip(mu'(s') + clip(N(0, sigma_tilde), -c, c), low, high), one column
// per next state. The actor output is assumed to lie in [-1, 1] and is
// scaled onto the action bounds first.
Eigen::MatrixXd SmoothTargetActions(const MlpParams& actor_target,
                                    const MlpSpec& actor_spec,
                                    const Eigen::MatrixXd& next_states,
                                    const SmoothingConfig& config, Rng& rng);
Eigen::VectorXd SmoothTargetAction(const MlpParams& actor_target,
                                   const MlpSpec& actor_spec,
                                   const Eigen::VectorXd& next_state,
                                   const SmoothingConfig& config, Rng& rng);

// target <- tau * live + (1 - tau) * target, tau in (0, 1].
void EmaUpdate(MlpParams& target, const MlpParams& live, double tau);

}  // namespace bbrl

#endif  // BBRL_TARGET_RULES_H_
