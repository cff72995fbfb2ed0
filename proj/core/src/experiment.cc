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


#include "bbrl/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "bbrl/errors.h"

namespace bbrl {
namespace fs = std::filesystem;
namespace {

std::string FormatDouble(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

template <typename T>
T ParseNumber(const std::string& text, const char* what) {
  std::istringstream in(text);
  T value{};
  in >> value;
  if (in.fail() || !in.eof()) {
    throw ConfigError(std::string("malformed ") + what + " '" + text + "'");
  }
  return value;
}

double SampleStd(const std::vector<double>& values, double mean) {
  if (values.size() < 2) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += (v - mean) * (v - mean);
  return std::sqrt(sum / static_cast<double>(values.size() - 1));
}

double Mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

const std::regex& TraceName() {
  static const std::regex pattern("seed_([0-9]+)\\.csv");
  return pattern;
}

// Seed traces in a directory, ordered by seed.
std::vector<std::pair<std::uint64_t, fs::path>> TraceFiles(
    const fs::path& dir) {
  std::vector<std::pair<std::uint64_t, fs::path>> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::smatch match;
    const std::string name = entry.path().filename().string();
    if (std::regex_match(name, match, TraceName())) {
      files.emplace_back(std::stoull(match[1].str()), entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

RunSummary SummarizeRunDir(const fs::path& dir) {
  std::vector<std::vector<EvalRecord>> traces;
  for (const auto& [seed, path] : TraceFiles(dir)) {
    traces.push_back(ParseTrace(ReadFile(path)));
  }
  WriteFileAtomic(dir / "aggregate.csv", FormatAggregate(Aggregate(traces)));
  RunSummary summary = Summarize(traces);
  WriteFileAtomic(dir / "summary.csv", FormatSummary(summary));
  return summary;
}

}  // namespace

std::int64_t ExperimentConfig::EvalEvery() const {
  if (eval_every) return *eval_every;
  return discrete_env() ? 50 : 5000;
}

std::string ExperimentConfig::RunName() const {
  return run_name.empty() ? env + "_" + algo : run_name;
}

void ExperimentConfig::Validate() const {
  if (seeds.empty()) throw ConfigError("seeds: at least one seed is required");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() !=
      seeds.size()) {
    throw ConfigError("seeds: values must be distinct");
  }
  if (EvalEvery() < 1) throw ConfigError("eval_every must be >= 1");
  const std::int64_t length = discrete_env() ? max_episodes : max_env_steps;
  if (EvalEvery() > length) {
    throw ConfigError("eval_every exceeds the training length; no evaluation "
                      "would be recorded");
  }
  if (eval_episodes < 1) throw ConfigError("eval_episodes must be >= 1");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (out.empty()) throw ConfigError("out: output directory is empty");
  if (RunName().find('/') != std::string::npos) {
    throw ConfigError("run_name must not contain '/'");
  }
  if (discrete_env()) {
    ToDiscreteRunConfig(*this);
  } else {
    ToTd3RunConfig(*this);
  }
}

DiscreteRunConfig ToDiscreteRunConfig(const ExperimentConfig& config) {
  DiscreteRunConfig run;
  run.algorithm = ParseDiscreteAlgorithm(config.algo);
  if (config.bandit_mode && *config.bandit_mode != BanditMode::kLearned) {
    throw ConfigError("bandit.mode: the synthetic-MDP agents only support "
                      "'learned'");
  }
  run.agent = config.discrete;
  run.bandit = config.bandit;
  run.mdp = config.mdp;
  run.episodes = config.max_episodes;
  run.eval_every = static_cast<int>(config.EvalEvery());
  run.eval_episodes = config.eval_episodes;
  run.agent.Validate();
  run.bandit.Validate();
  run.mdp.Validate();
  if (run.episodes < 1) throw ConfigError("max_episodes must be >= 1");
  return run;
}

Td3RunConfig ToTd3RunConfig(const ExperimentConfig& config) {
  Td3RunConfig run;
  run.algorithm = ParseTd3Algorithm(config.algo);
  run.mode = config.bandit_mode;
  run.agent = config.td3;
  run.bandit = config.bandit;
  run.env.name = config.env;
  run.env.mdp = config.mdp;
  run.env.pendulum = config.pendulum;
  run.max_env_steps = config.max_env_steps;
  run.warmup_steps = config.warmup_steps;
  run.eval_every = config.EvalEvery();
  run.eval_episodes = config.eval_episodes;
  if (run.env.name != "pendulum") {
    throw ConfigError("env: unknown continuous-control environment '" +
                      run.env.name + "'");
  }
  run.env.pendulum.Validate();
  run.Validate();
  return run;
}

RunResult RunSeed(const ExperimentConfig& config, std::uint64_t seed) {
  if (config.discrete_env()) {
    return RunDiscrete(ToDiscreteRunConfig(config), seed);
  }
  return RunBeTd3(ToTd3RunConfig(config), seed);
}

std::string FormatTrace(const std::vector<EvalRecord>& records) {
  std::string text = std::string(kTraceHeader) + "\n";
  for (const EvalRecord& r : records) {
    text += std::to_string(r.env_step) + "," + std::to_string(r.episode) + "," +
            FormatDouble(r.mean_return) + ",";
    if (r.bandit_choice) text += std::to_string(*r.bandit_choice);
    text += ",";
    if (r.epsilon) text += FormatDouble(*r.epsilon);
    text += "," + std::to_string(r.seed) + "\n";
  }
  return text;
}

std::vector<EvalRecord> ParseTrace(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw ConfigError("trace CSV has an unexpected header");
  }
  std::vector<EvalRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitFields(line);
    if (f.size() != 6) throw ConfigError("trace row needs 6 fields: " + line);
    EvalRecord r;
    r.env_step = ParseNumber<std::int64_t>(f[0], "env_step");
    r.episode = ParseNumber<std::int64_t>(f[1], "episode");
    r.mean_return = ParseNumber<double>(f[2], "mean_return");
    if (!f[3].empty()) r.bandit_choice = ParseNumber<int>(f[3], "bandit_choice");
    if (!f[4].empty()) r.epsilon = ParseNumber<double>(f[4], "epsilon");
    r.seed = ParseNumber<std::uint64_t>(f[5], "seed");
    records.push_back(r);
  }
  return records;
}

void WriteFileAtomic(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw ConfigError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    throw ConfigError("cannot move " + tmp.string() + " into place: " +
                      ec.message());
  }
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::vector<AggregateRow> Aggregate(
    const std::vector<std::vector<EvalRecord>>& traces) {
  std::vector<AggregateRow> rows;
  if (traces.empty()) return rows;
  std::size_t length = traces.front().size();
  for (const auto& trace : traces) length = std::min(length, trace.size());
  for (std::size_t i = 0; i < length; ++i) {
    std::vector<double> returns;
    std::vector<double> steps;
    for (const auto& trace : traces) {
      returns.push_back(trace[i].mean_return);
      steps.push_back(static_cast<double>(trace[i].env_step));
    }
    AggregateRow row;
    row.eval_index = static_cast<std::int64_t>(i);
    row.episode = traces.front()[i].episode;
    row.env_step = Mean(steps);
    row.mean_return = Mean(returns);
    row.half_std = 0.5 * SampleStd(returns, row.mean_return);
    row.num_seeds = static_cast<int>(traces.size());
    rows.push_back(row);
  }
  return rows;
}

std::string FormatAggregate(const std::vector<AggregateRow>& rows) {
  std::string text = "eval_index,episode,env_step,mean_return,half_std,seeds\n";
  for (const AggregateRow& row : rows) {
    text += std::to_string(row.eval_index) + "," +
            std::to_string(row.episode) + "," + FormatDouble(row.env_step) +
            "," + FormatDouble(row.mean_return) + "," +
            FormatDouble(row.half_std) + "," + std::to_string(row.num_seeds) +
            "\n";
  }
  return text;
}

RunSummary Summarize(const std::vector<std::vector<EvalRecord>>& traces) {
  RunSummary summary;
  for (const auto& trace : traces) {
    if (trace.empty()) continue;
    double best = trace.front().mean_return;
    for (const EvalRecord& r : trace) best = std::max(best, r.mean_return);
    summary.seeds.push_back(trace.front().seed);
    summary.max_returns.push_back(best);
  }
  summary.mean = Mean(summary.max_returns);
  summary.stddev = SampleStd(summary.max_returns, summary.mean);
  return summary;
}

std::string FormatSummary(const RunSummary& summary) {
  std::string text = "seed,max_average_return\n";
  for (std::size_t i = 0; i < summary.seeds.size(); ++i) {
    text += std::to_string(summary.seeds[i]) + "," +
            FormatDouble(summary.max_returns[i]) + "\n";
  }
  text += "mean," + FormatDouble(summary.mean) + "\n";
  text += "std," + FormatDouble(summary.stddev) + "\n";
  return text;
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  ExperimentResult result;
  result.run_dir = config.out / config.RunName();
  std::error_code ec;
  fs::create_directories(result.run_dir, ec);
  if (ec || !fs::is_directory(result.run_dir)) {
    throw ConfigError("cannot create output directory " +
                      result.run_dir.string());
  }
  WriteFileAtomic(result.run_dir / ".write-check", "");
  fs::remove(result.run_dir / ".write-check");
  for (const auto& [seed, path] : TraceFiles(result.run_dir)) fs::remove(path);
  fs::remove(result.run_dir / "failures.txt");

  const std::size_t n = config.seeds.size();
  std::vector<std::optional<std::string>> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const std::uint64_t seed = config.seeds[i];
      try {
        const RunResult run = RunSeed(config, seed);
        WriteFileAtomic(
            result.run_dir / ("seed_" + std::to_string(seed) + ".csv"),
            FormatTrace(run.records));
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const int threads =
      static_cast<int>(std::min<std::size_t>(n, config.jobs));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::string failures;
  for (std::size_t i = 0; i < n; ++i) {
    const fs::path trace =
        result.run_dir / ("seed_" + std::to_string(config.seeds[i]) + ".csv");
    if (errors[i]) {
      result.failures.push_back({config.seeds[i], *errors[i]});
      failures += std::to_string(config.seeds[i]) + ": " + *errors[i] + "\n";
    } else {
      result.trace_files.push_back(trace);
    }
  }
  if (!failures.empty()) {
    WriteFileAtomic(result.run_dir / "failures.txt", failures);
  }
  result.summary = SummarizeRunDir(result.run_dir);
  return result;
}

std::vector<fs::path> SummarizeDirectory(const fs::path& root) {
  if (!fs::is_directory(root)) {
    throw ConfigError("not a directory: " + root.string());
  }
  std::vector<fs::path> dirs{root};
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin() + 1, dirs.end());
  std::vector<fs::path> touched;
  for (const fs::path& dir : dirs) {
    if (TraceFiles(dir).empty()) continue;
    SummarizeRunDir(dir);
    touched.push_back(dir);
  }
  return touched;
}

}  // namespace bbrl
