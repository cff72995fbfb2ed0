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

#ifndef BBRL_ENVIRONMENTS_H_
#define BBRL_ENVIRONMENTS_H_

#include <cstdint>
#include <memory>
#include <string>

#include "bbrl/environment.h"
#include "bbrl/pendulum.h"
#include "bbrl/synthetic_mdp.h"

namespace bbrl {

struct EnvironmentOptions {
  std::string name = "pendulum";  // "synthetic-mdp" | "pendulum"
  SyntheticMdpConfig mdp;
  PendulumConfig pendulum;
};

// Throws ConfigError for an unknown name.
std::unique_ptr<Environment> MakeEnvironment(const EnvironmentOptions& options,
                                             std::uint64_t seed);

}  // namespace bbrl

#endif  // BBRL_ENVIRONMENTS_H_
