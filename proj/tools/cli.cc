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


#include "cli.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "bbrl/errors.h"
#include "bbrl/experiment.h"
#include "config_file.h"

namespace bbrl::cli {
namespace {

namespace fs = std::filesystem;

std::filesystem::path DefaultOut() {
  const char* env = std::getenv("BBRL_OUT");
  return env != nullptr && *env != '\0' ? fs::path(env) : fs::path("results");
}

std::vector<std::uint64_t> SeedRange(std::uint64_t first, int count) {
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < count; ++i) seeds.push_back(first + i);
  return seeds;
}

std::string Fixed(double value, int digits = 3) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return buffer;
}

void Report(const ExperimentResult& result, std::ostream& out) {
  out << result.run_dir.string() << ": " << result.trace_files.size()
      << " seed(s) ok";
  if (!result.failures.empty()) {
    out << ", " << result.failures.size() << " failed";
  }
  out << "; max average return " << Fixed(result.summary.mean) << " +- "
      << Fixed(result.summary.stddev) << " (std)\n";
  for (const SeedFailure& f : result.failures) {
    out << "  seed " << f.seed << " failed: " << f.message << "\n";
  }
}

struct CommonFlags {
  std::string out;
  int jobs = 1;
  std::string config;
};

void AddCommon(CLI::App* app, CommonFlags& flags) {
  app->add_option("--out", flags.out,
                  "Output root (default: $BBRL_OUT or ./results)");
  app->add_option("--jobs", flags.jobs, "Seeds run concurrently")
      ->check(CLI::PositiveNumber);
}

ExperimentConfig BaseConfig(const CommonFlags& flags) {
  ExperimentConfig config;
  config.out = DefaultOut();
  if (!flags.config.empty()) ApplyConfigFile(flags.config, config);
  if (!flags.out.empty()) config.out = flags.out;
  config.jobs = flags.jobs;
  return config;
}

}  // namespace

int CliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Bias-exploiting clipped double Q-learning experiments", "bbrl"};
  app.require_subcommand(1);

  // run
  CLI::App* run = app.add_subcommand("run", "Run an experiment config");
  CommonFlags run_flags;
  std::vector<std::uint64_t> run_seeds;
  std::string run_env;
  std::string run_algo;
  std::int64_t run_steps = 0;
  run->add_option("--config", run_flags.config, "Experiment config file")
      ->required();
  run->add_option("--seed", run_seeds, "Seed override (repeatable)");
  run->add_option("--env", run_env, "synthetic-mdp | pendulum");
  run->add_option("--algo", run_algo, "Algorithm name");
  run->add_option("--steps", run_steps,
                  "Training length: env steps, or episodes on synthetic-mdp")
      ->check(CLI::PositiveNumber);
  AddCommon(run, run_flags);

  // replicate
  CLI::App* replicate =
      app.add_subcommand("replicate", "Canned experiment suites");
  replicate->require_subcommand(1);
  CLI::App* fig1 = replicate->add_subcommand(
      "fig1", "Q-learning, CDQ, CDQ max-critic and BE-CDQ on both MDPs");
  CommonFlags fig1_flags;
  int fig1_seeds = 20;
  int fig1_episodes = 1000;
  fig1->add_option("--seeds", fig1_seeds, "Seeds per curve")
      ->check(CLI::PositiveNumber);
  fig1->add_option("--episodes", fig1_episodes, "Training episodes")
      ->check(CLI::PositiveNumber);
  fig1->add_option("--config", fig1_flags.config, "Base config file");
  AddCommon(fig1, fig1_flags);

  CLI::App* ablation = replicate->add_subcommand(
      "ablation", "TD3 target-rule and bandit variants on the pendulum");
  CommonFlags ablation_flags;
  int ablation_seeds = 10;
  std::int64_t ablation_steps = 100'000;
  ablation->add_option("--seeds", ablation_seeds, "Seeds per variant")
      ->check(CLI::PositiveNumber);
  ablation->add_option("--steps", ablation_steps, "Environment steps")
      ->check(CLI::PositiveNumber);
  ablation->add_option("--config", ablation_flags.config, "Base config file");
  AddCommon(ablation, ablation_flags);

  // summarize
  CLI::App* summarize = app.add_subcommand(
      "summarize", "Rebuild aggregate.csv and summary.csv from seed traces");
  std::string summarize_dir;
  summarize->add_option("dir", summarize_dir,
                        "Results root (default: $BBRL_OUT or ./results)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return 2;
  }

  try {
    if (*run) {
      ExperimentConfig config = BaseConfig(run_flags);
      if (!run_seeds.empty()) config.seeds = run_seeds;
      if (!run_env.empty()) config.env = run_env;
      if (!run_algo.empty()) config.algo = run_algo;
      if (run_steps > 0) {
        if (config.discrete_env()) {
          config.max_episodes = static_cast<int>(run_steps);
        } else {
          config.max_env_steps = run_steps;
        }
      }
      const ExperimentResult result = RunExperiment(config);
      Report(result, out);
      return result.trace_files.empty() ? 1 : 0;
    }
    if (*fig1) {
      const ExperimentConfig base = BaseConfig(fig1_flags);
      bool all_ok = true;
      for (double mu : {1.0, -1.0}) {
        for (const char* algo : {"qlearning", "cdq", "cdq-max", "be-cdq"}) {
          ExperimentConfig config = base;
          config.env = "synthetic-mdp";
          config.algo = algo;
          config.mdp.mu = mu;
          config.max_episodes = fig1_episodes;
          config.seeds = SeedRange(0, fig1_seeds);
          config.out = base.out / "fig1";
          config.run_name =
              std::string(mu > 0 ? "mu+1_" : "mu-1_") + algo;
          const ExperimentResult result = RunExperiment(config);
          all_ok = all_ok && result.failures.empty();
          Report(result, out);
        }
      }
      return all_ok ? 0 : 1;
    }
    if (*ablation) {
      const ExperimentConfig base = BaseConfig(ablation_flags);
      bool all_ok = true;
      for (const char* algo : {"td3", "td3-max", "td3-avg", "td3-rand",
                               "be-td3", "td3-hm", "td3-hmin"}) {
        ExperimentConfig config = base;
        config.env = "pendulum";
        config.algo = algo;
        config.max_env_steps = ablation_steps;
        config.seeds = SeedRange(0, ablation_seeds);
        config.out = base.out / "ablation";
        config.run_name = algo;
        const ExperimentResult result = RunExperiment(config);
        all_ok = all_ok && result.failures.empty();
        Report(result, out);
      }
      return all_ok ? 0 : 1;
    }
    if (*summarize) {
      const fs::path root =
          summarize_dir.empty() ? DefaultOut() : fs::path(summarize_dir);
      const std::vector<fs::path> dirs = SummarizeDirectory(root);
      for (const fs::path& dir : dirs) out << "summarized " << dir.string() << "\n";
      if (dirs.empty()) {
        err << "no seed_*.csv traces under " << root.string() << "\n";
        return 1;
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace bbrl::cli
