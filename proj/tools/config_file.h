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


#ifndef BBRL_TOOLS_CONFIG_FILE_H_
#define BBRL_TOOLS_CONFIG_FILE_H_

#include <filesystem>
#include <string>

#include "bbrl/experiment.h"

namespace bbrl::cli {

// Reads a TOML-style experiment file into `config`. Top-level keys cover the
// experiment itself (env, algo, seeds, ...); [mdp], [pendulum], [discrete],
// [td3] and [bandit] sections cover the rest. Unknown keys and malformed
// values throw ConfigError.
void ApplyConfigFile(const std::filesystem::path& path,
                     ExperimentConfig& config);
void ApplyConfigText(const std::string& text, ExperimentConfig& config);

// Every accepted key as "section.name", sorted.
std::vector<std::string> KnownConfigKeys();

}  // namespace bbrl::cli

#endif  // BBRL_TOOLS_CONFIG_FILE_H_
