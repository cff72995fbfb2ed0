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


#ifndef BBRL_EXPERIMENT_H_
#define BBRL_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bbrl/be_td3.h"
#include "bbrl/bias_bandit.h"
#include "bbrl/discrete_agents.h"
#include "bbrl/environments.h"
#include "bbrl/run_record.h"
#include "bbrl/td3_agent.h"

namespace bbrl {

// Everything needed to launch one multi-seed experiment. Only the fields
// relevant to the chosen environment are read: the synthetic MDP runs the
// critic-only agents for `max_episodes` episodes, everything else runs the
// TD3 family for `max_env_steps` steps.
struct ExperimentConfig {
  std::string env = "pendulum";
  std::string algo = "td3";
  std::vector<std::uint64_t> seeds{0};
  std::int64_t max_env_steps = 100'000;
  int max_episodes = 1000;
  // Episodes on the synthetic MDP, environment steps elsewhere. Unset picks
  // 50 episodes or 5000 steps.
  std::optional<std::int64_t> eval_every;
  int eval_episodes = 10;

  SyntheticMdpConfig mdp;
  PendulumConfig pendulum;
  DiscreteAgentConfig discrete;
  Td3Config td3;
  std::int64_t warmup_steps = 1000;
  BanditState bandit;
  std::optional<BanditMode> bandit_mode;

  std::filesystem::path out = "results";
  std::string run_name;  // defaults to "<env>_<algo>"
  int jobs = 1;

  bool discrete_env() const { return env == "synthetic-mdp"; }
  std::int64_t EvalEvery() const;
  std::string RunName() const;
  // Throws ConfigError naming the offending field.
  void Validate() const;
};

// Per-run config builders; both validate.
DiscreteRunConfig ToDiscreteRunConfig(const ExperimentConfig& config);
Td3RunConfig ToTd3RunConfig(const ExperimentConfig& config);

// Trains one seed of `config`.
RunResult RunSeed(const ExperimentConfig& config, std::uint64_t seed);

inline constexpr const char* kTraceHeader =
    "env_step,episode,mean_return,bandit_choice,epsilon,seed";

// Trace CSV text for one seed; floats carry 17 significant digits.
std::string FormatTrace(const std::vector<EvalRecord>& records);
// Inverse of FormatTrace. Throws ConfigError on malformed input.
std::vector<EvalRecord> ParseTrace(const std::string& text);

// Writes through a temporary file and a rename.
void WriteFileAtomic(const std::filesystem::path& path,
                     const std::string& contents);
std::string ReadFile(const std::filesystem::path& path);

struct AggregateRow {
  std::int64_t eval_index = 0;
  std::int64_t episode = 0;
  double env_step = 0.0;  // mean over seeds
  double mean_return = 0.0;
  double half_std = 0.0;  // half the sample standard deviation
  int num_seeds = 0;
};

// Aligns traces by evaluation index; rows past the shortest trace are
// dropped.
std::vector<AggregateRow> Aggregate(
    const std::vector<std::vector<EvalRecord>>& traces);
std::string FormatAggregate(const std::vector<AggregateRow>& rows);

// Maximum average return per seed and its cross-seed statistics.
struct RunSummary {
  std::vector<std::uint64_t> seeds;
  std::vector<double> max_returns;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for one seed
};

RunSummary Summarize(const std::vector<std::vector<EvalRecord>>& traces);
std::string FormatSummary(const RunSummary& summary);

struct SeedFailure {
  std::uint64_t seed = 0;
  std::string message;
};

struct ExperimentResult {
  std::filesystem::path run_dir;
  std::vector<std::filesystem::path> trace_files;
  std::vector<SeedFailure> failures;
  RunSummary summary;
};

// Runs every seed (up to `jobs` at once), writes one trace per seed as
// <out>/<run name>/seed_<seed>.csv, then aggregate.csv and summary.csv built
// from the completed seeds. A seed that throws is recorded in failures.txt
// and skipped. Config and output-directory problems throw before any
// training starts.
ExperimentResult RunExperiment(const ExperimentConfig& config);

// Rebuilds aggregate.csv and summary.csv in every directory under `root`
// (including `root`) that holds seed_*.csv traces. Returns the directories
// touched.
std::vector<std::filesystem::path> SummarizeDirectory(
    const std::filesystem::path& root);

}  // namespace bbrl

#endif  // BBRL_EXPERIMENT_H_
