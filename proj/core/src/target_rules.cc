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

#include "bbrl/target_rules.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "bbrl/errors.h"

namespace bbrl {

TargetRuleKind ParseTargetRule(std::string_view name) {
  if (name == "min") return TargetRuleKind::kMin;
  if (name == "max") return TargetRuleKind::kMax;
  if (name == "avg") return TargetRuleKind::kAverage;
  if (name == "random") return TargetRuleKind::kRandomMask;
  throw ConfigError("unknown target rule '" + std::string(name) +
                    "' (expected min, max, avg or random)");
}

std::string_view TargetRuleName(TargetRuleKind kind) {
  switch (kind) {
    case TargetRuleKind::kMin:
      return "min";
    case TargetRuleKind::kMax:
      return "max";
    case TargetRuleKind::kAverage:
      return "avg";
    case TargetRuleKind::kRandomMask:
      return "random";
  }
  return "?";
}

double ComputeTarget(const TargetRule& rule, double reward, bool done,
                     double gamma, double q1, double q2) {
  if (!std::isfinite(reward) || !std::isfinite(q1) || !std::isfinite(q2)) {
    throw NumericalError("non-finite input to target computation");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ContractError("discount must lie in [0, 1]");
  }
  if (done) return reward;
  double bootstrap = 0.0;
  switch (rule.kind) {
    case TargetRuleKind::kMin:
      bootstrap = std::min(q1, q2);
      break;
    case TargetRuleKind::kMax:
      bootstrap = std::max(q1, q2);
      break;
    case TargetRuleKind::kAverage:
      bootstrap = 0.5 * (q1 + q2);
      break;
    case TargetRuleKind::kRandomMask:
      if (rule.beta != 0 && rule.beta != 1) {
        throw ContractError("random-mask beta must be 0 or 1");
      }
      bootstrap = rule.beta == 1 ? q1 : q2;
      break;
  }
  return reward + gamma * bootstrap;
}

void ResampleMask(TargetRule& rule, Rng& rng) {
  if (rule.kind == TargetRuleKind::kRandomMask) {
    rule.beta = rng.Bernoulli(0.5) ? 1 : 0;
  }
}

Eigen::MatrixXd ScaleToBounds(const Eigen::MatrixXd& unit,
                              const Eigen::VectorXd& low,
                              const Eigen::VectorXd& high) {
  if (unit.rows() != low.size() || unit.rows() != high.size()) {
    throw ConfigError("action bounds do not match actor output width");
  }
  const Eigen::VectorXd mid = 0.5 * (high + low);
  const Eigen::VectorXd half = 0.5 * (high - low);
  Eigen::MatrixXd scaled = half.asDiagonal() * unit;
  scaled.colwise() += mid;
  return scaled;
}

Eigen::MatrixXd SmoothTargetActions(const MlpParams& actor_target,
                                    const MlpSpec& actor_spec,
                                    const Eigen::MatrixXd& next_states,
                                    const SmoothingConfig& config, Rng& rng) {
  if (config.noise_clip < 0.0 || config.sigma_tilde < 0.0) {
    throw ConfigError("smoothing noise std and clip must be non-negative");
  }
  Eigen::MatrixXd actions =
      ScaleToBounds(EvaluateBatch(actor_target, actor_spec, next_states),
                    config.action_low, config.action_high);
  const double c = config.noise_clip;
  for (Eigen::Index j = 0; j < actions.cols(); ++j) {
    for (Eigen::Index i = 0; i < actions.rows(); ++i) {
      double noise = 0.0;
      if (config.sigma_tilde > 0.0) {
        noise = std::clamp(rng.Normal(0.0, config.sigma_tilde), -c, c);
      }
      actions(i, j) = std::clamp(actions(i, j) + noise, config.action_low(i),
                                 config.action_high(i));
    }
  }
  return actions;
}

Eigen::VectorXd SmoothTargetAction(const MlpParams& actor_target,
                                   const MlpSpec& actor_spec,
                                   const Eigen::VectorXd& next_state,
                                   const SmoothingConfig& config, Rng& rng) {
  return SmoothTargetActions(actor_target, actor_spec, next_state, config, rng)
      .col(0);
}

void EmaUpdate(MlpParams& target, const MlpParams& live, double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw ConfigError("EMA rate tau must lie in (0, 1]");
  }
  if (!SameShape(target.layers, live.layers)) {
    throw ConfigError("EMA update between differently shaped networks");
  }
  for (std::size_t l = 0; l < target.layers.size(); ++l) {
    auto& t = target.layers[l];
    const auto& s = live.layers[l];
    t.weight = tau * s.weight + (1.0 - tau) * t.weight;
    t.bias = tau * s.bias + (1.0 - tau) * t.bias;
  }
}

}  // namespace bbrl
