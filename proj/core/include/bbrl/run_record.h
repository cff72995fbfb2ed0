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

#ifndef BBRL_RUN_RECORD_H_
#define BBRL_RUN_RECORD_H_

#include <cstdint>
#include <optional>
#include <vector>

namespace bbrl {

// One evaluation point of a training run.
struct EvalRecord {
  std::int64_t env_step = 0;
  std::int64_t episode = 0;
  double mean_return = 0.0;
  std::optional<int> bandit_choice;  // last training episode's arm
  std::optional<double> epsilon;     // bandit epsilon at evaluation time
  std::uint64_t seed = 0;
};

struct RunResult {
  std::vector<EvalRecord> records;
  // Arm drawn for every training episode; empty for non-bandit modes.
  std::vector<int> episode_choices;
  // Bandit epsilon after every training episode; empty for non-bandit modes.
  std::vector<double> episode_epsilons;
  std::vector<double> episode_returns;
};

}  // namespace bbrl

#endif  // BBRL_RUN_RECORD_H_
