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


#ifndef BBRL_TOOLS_CLI_H_
#define BBRL_TOOLS_CLI_H_

#include <ostream>

namespace bbrl::cli {

// Entry point of the `bbrl` driver. Subcommands:
//   run --config FILE [--seed N]... [--env E] [--algo A] [--steps N]
//       [--out DIR] [--jobs N]
//   replicate fig1 [--seeds N] [--episodes N] [--out DIR] [--jobs N]
//   replicate ablation [--seeds N] [--steps N] [--out DIR] [--jobs N]
//   summarize [DIR]
// Returns 0 on success, 2 on usage errors, 1 on run failures.
int CliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace bbrl::cli

#endif  // BBRL_TOOLS_CLI_H_
