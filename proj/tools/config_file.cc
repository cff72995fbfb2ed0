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


#include "config_file.h"

#include <CLI11.hpp>

#include <functional>
#include <map>
#include <sstream>

#include "bbrl/errors.h"

namespace bbrl::cli {
namespace {

using Values = std::vector<std::string>;
using Setter = std::function<void(const Values&, ExperimentConfig&)>;

const std::string& Single(const std::string& key, const Values& values) {
  if (values.size() != 1) throw ConfigError(key + ": expected one value");
  return values.front();
}

template <typename T>
T Parse(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T value{};
  in >> value;
  if (in.fail() || !in.eof()) {
    throw ConfigError(key + ": cannot parse '" + text + "'");
  }
  return value;
}

template <>
bool Parse<bool>(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

template <>
std::string Parse<std::string>(const std::string&, const std::string& text) {
  return text;
}

template <typename T, typename Field>
std::pair<const std::string, Setter> Key(std::string name, Field field) {
  return {name, [name, field](const Values& values, ExperimentConfig& config) {
            field(config) = Parse<T>(name, Single(name, values));
          }};
}

template <typename T, typename Field>
std::pair<const std::string, Setter> ListKey(std::string name, Field field) {
  return {name, [name, field](const Values& values, ExperimentConfig& config) {
            std::vector<T> parsed;
            for (const std::string& v : values) parsed.push_back(Parse<T>(name, v));
            field(config) = std::move(parsed);
          }};
}

const std::map<std::string, Setter>& Setters() {
  using C = ExperimentConfig;
  static const std::map<std::string, Setter> setters = {
      Key<std::string>("env", [](C& c) -> auto& { return c.env; }),
      Key<std::string>("algo", [](C& c) -> auto& { return c.algo; }),
      ListKey<std::uint64_t>("seeds", [](C& c) -> auto& { return c.seeds; }),
      Key<std::int64_t>("max_env_steps",
                        [](C& c) -> auto& { return c.max_env_steps; }),
      Key<int>("max_episodes", [](C& c) -> auto& { return c.max_episodes; }),
      {"eval_every",
       [](const Values& v, C& c) {
         c.eval_every = Parse<std::int64_t>("eval_every", Single("eval_every", v));
       }},
      Key<int>("eval_episodes", [](C& c) -> auto& { return c.eval_episodes; }),
      Key<std::int64_t>("warmup_steps",
                        [](C& c) -> auto& { return c.warmup_steps; }),
      {"out",
       [](const Values& v, C& c) { c.out = Single("out", v); }},
      Key<std::string>("run_name", [](C& c) -> auto& { return c.run_name; }),
      Key<int>("jobs", [](C& c) -> auto& { return c.jobs; }),

      Key<double>("mdp.mu", [](C& c) -> auto& { return c.mdp.mu; }),
      Key<double>("mdp.sigma", [](C& c) -> auto& { return c.mdp.sigma; }),

      Key<double>("pendulum.dt", [](C& c) -> auto& { return c.pendulum.dt; }),
      Key<double>("pendulum.gravity",
                  [](C& c) -> auto& { return c.pendulum.gravity; }),
      Key<double>("pendulum.mass", [](C& c) -> auto& { return c.pendulum.mass; }),
      Key<double>("pendulum.length",
                  [](C& c) -> auto& { return c.pendulum.length; }),
      Key<double>("pendulum.max_speed",
                  [](C& c) -> auto& { return c.pendulum.max_speed; }),
      Key<double>("pendulum.max_torque",
                  [](C& c) -> auto& { return c.pendulum.max_torque; }),
      Key<int>("pendulum.max_episode_steps",
               [](C& c) -> auto& { return c.pendulum.max_episode_steps; }),

      Key<int>("discrete.hidden_units",
               [](C& c) -> auto& { return c.discrete.hidden_units; }),
      Key<double>("discrete.learning_rate",
                  [](C& c) -> auto& { return c.discrete.learning_rate; }),
      Key<int>("discrete.batch_size",
               [](C& c) -> auto& { return c.discrete.batch_size; }),
      Key<int>("discrete.action_samples",
               [](C& c) -> auto& { return c.discrete.action_samples; }),
      Key<double>("discrete.explore_epsilon",
                  [](C& c) -> auto& { return c.discrete.explore_epsilon; }),
      Key<double>("discrete.gamma",
                  [](C& c) -> auto& { return c.discrete.gamma; }),
      Key<std::size_t>("discrete.buffer_capacity",
                       [](C& c) -> auto& { return c.discrete.buffer_capacity; }),
      Key<bool>("discrete.independent_batches",
                [](C& c) -> auto& { return c.discrete.independent_batches; }),
      Key<bool>("discrete.update_before_rollout",
                [](C& c) -> auto& { return c.discrete.update_before_rollout; }),

      ListKey<int>("td3.actor_hidden",
                   [](C& c) -> auto& { return c.td3.actor_hidden; }),
      ListKey<int>("td3.critic_hidden",
                   [](C& c) -> auto& { return c.td3.critic_hidden; }),
      Key<double>("td3.actor_lr", [](C& c) -> auto& { return c.td3.actor_lr; }),
      Key<double>("td3.critic_lr", [](C& c) -> auto& { return c.td3.critic_lr; }),
      Key<double>("td3.tau", [](C& c) -> auto& { return c.td3.tau; }),
      Key<double>("td3.gamma", [](C& c) -> auto& { return c.td3.gamma; }),
      Key<int>("td3.batch_size", [](C& c) -> auto& { return c.td3.batch_size; }),
      Key<int>("td3.policy_delay",
               [](C& c) -> auto& { return c.td3.policy_delay; }),
      Key<double>("td3.explore_sigma",
                  [](C& c) -> auto& { return c.td3.explore_sigma; }),
      Key<double>("td3.smoothing_sigma",
                  [](C& c) -> auto& { return c.td3.smoothing.sigma_tilde; }),
      Key<double>("td3.noise_clip",
                  [](C& c) -> auto& { return c.td3.smoothing.noise_clip; }),
      Key<std::size_t>("td3.buffer_capacity",
                       [](C& c) -> auto& { return c.td3.buffer_capacity; }),
      Key<bool>("td3.explore_with_target_actor",
                [](C& c) -> auto& { return c.td3.explore_with_target_actor; }),

      Key<double>("bandit.epsilon", [](C& c) -> auto& { return c.bandit.epsilon; }),
      Key<double>("bandit.eps_decay",
                  [](C& c) -> auto& { return c.bandit.epsilon_decay; }),
      Key<double>("bandit.alpha", [](C& c) -> auto& { return c.bandit.alpha; }),
      Key<int>("bandit.reset_period",
               [](C& c) -> auto& { return c.bandit.reset_period; }),
      Key<int>("bandit.k_eps", [](C& c) -> auto& { return c.bandit.k_eps; }),
      {"bandit.schedule",
       [](const Values& v, C& c) {
         c.bandit.schedule =
             ParseEpsilonSchedule(Single("bandit.schedule", v));
       }},
      {"bandit.mode",
       [](const Values& v, C& c) {
         c.bandit_mode = ParseBanditMode(Single("bandit.mode", v));
       }},
  };
  return setters;
}

void Apply(const std::vector<CLI::ConfigItem>& items,
           ExperimentConfig& config) {
  for (const CLI::ConfigItem& item : items) {
    // Section open/close markers.
    if (item.name == "++" || item.name == "--") continue;
    const std::string key = item.fullname();
    const auto it = Setters().find(key);
    if (it == Setters().end()) {
      throw ConfigError("unknown config key '" + key + "'");
    }
    it->second(item.inputs, config);
  }
}

// CLI11's reader rejects comments after a section header, so drop every
// comment outside quotes up front.
std::string StripComments(const std::string& text) {
  std::string out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    char quote = 0;
    std::size_t end = line.size();
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quote) {
        if (c == quote) quote = 0;
      } else if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == '#') {
        end = i;
        break;
      }
    }
    out.append(line, 0, end);
    out.push_back('\n');
  }
  return out;
}

void ApplyText(const std::string& text, const std::string& origin,
               ExperimentConfig& config) {
  std::istringstream in(StripComments(text));
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_config(in);
  } catch (const CLI::Error& e) {
    throw ConfigError("cannot parse " + origin + ": " + e.what());
  }
  Apply(items, config);
}

}  // namespace

void ApplyConfigFile(const std::filesystem::path& path,
                     ExperimentConfig& config) {
  if (!std::filesystem::is_regular_file(path)) {
    throw ConfigError("config file not found: " + path.string());
  }
  ApplyText(ReadFile(path), path.string(), config);
}

void ApplyConfigText(const std::string& text, ExperimentConfig& config) {
  ApplyText(text, "config", config);
}

std::vector<std::string> KnownConfigKeys() {
  std::vector<std::string> keys;
  for (const auto& [key, setter] : Setters()) keys.push_back(key);
  return keys;
}

}  // namespace bbrl::cli
