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


#include <cmath>

#include <gtest/gtest.h>

#include "bbrl/discrete_agents.h"
#include "bbrl/errors.h"

namespace bbrl {
namespace {

MlpParams LinearCritic(double slope) {
  MlpParams p = MlpParams::Zeros({{1, 1}, Activation::kTanh, Activation::kIdentity});
  p.layers[0].weight(0, 0) = slope;
  return p;
}

const MlpSpec kLinearSpec{{1, 1}, Activation::kTanh, Activation::kIdentity};

TEST(ArgmaxTest, SingleSampleReturnsThatSample) {
  const MlpSpec spec{{1, 8, 1}, Activation::kTanh, Activation::kIdentity};
  Rng init(1);
  const MlpParams critic = InitParams(spec, init);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng a(seed), b(seed);
    EXPECT_EQ(ArgmaxSampledAction(critic, spec, 1, a), b.Uniform(-1.0, 1.0));
  }
}

TEST(ArgmaxTest, ConstantCriticKeepsFirstCandidate) {
  const MlpParams critic = LinearCritic(0.0);
  Eigen::RowVectorXd c(4);
  c << 0.3, -0.9, 0.8, 0.1;
  EXPECT_EQ(ArgmaxOverActions(critic, kLinearSpec, c), 0.3);
}

TEST(ArgmaxTest, IncreasingCriticPicksLargestSample) {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::RowVectorXd c(16);
    for (int i = 0; i < 16; ++i) c(i) = rng.Uniform(-1.0, 1.0);
    EXPECT_EQ(ArgmaxOverActions(LinearCritic(1.0), kLinearSpec, c), c.maxCoeff());
    EXPECT_EQ(ArgmaxOverActions(LinearCritic(-2.0), kLinearSpec, c), c.minCoeff());
  }
}

TEST(ArgmaxTest, MoreSamplesNeverLowerTheScannedValue) {
  // The best of M uniform draws has expectation (M - 1) / (M + 1) for Q(a) = a.
  Rng rng(3);
  for (int m : {1, 4, 64}) {
    double sum = 0.0;
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
      sum += ArgmaxSampledAction(LinearCritic(1.0), kLinearSpec, m, rng);
    }
    EXPECT_NEAR(sum / trials, (m - 1.0) / (m + 1.0), 0.01) << "M=" << m;
  }
  EXPECT_THROW(ArgmaxSampledAction(LinearCritic(1.0), kLinearSpec, 0, rng),
               ContractError);
}

TEST(DiscreteAgentTest, CriticCountsPerAlgorithm) {
  BanditState bandit;
  DiscreteAgentConfig config;
  DiscreteAgent q(DiscreteAlgorithm::kQLearning, config, bandit, 0);
  DiscreteAgent cdq(DiscreteAlgorithm::kCdq, config, bandit, 0);
  for (int s = 0; s < 2; ++s) {
    EXPECT_EQ(q.critics().critics[s].size(), 1u);
    EXPECT_EQ(cdq.critics().critics[s].size(), 2u);
  }
  EXPECT_EQ(cdq.critics().spec.layer_sizes, (std::vector<int>{1, 64, 1}));
  EXPECT_EQ(cdq.critics().spec.hidden_activation, Activation::kTanh);
}

TEST(DiscreteAgentTest, TerminalTargetsAreRewards) {
  DiscreteAgent agent(DiscreteAlgorithm::kCdq, {}, {}, 4);
  std::vector<Transition> ts;
  for (double r : {-0.3, 2.0, 7.5}) {
    ts.push_back({EncodeMdpState(MdpState::kS1), Eigen::VectorXd::Constant(1, 0.2),
                  r, EncodeMdpState(MdpState::kT1), true});
  }
  Rng rng(0);
  const Eigen::VectorXd y = agent.Targets(MakeBatch(ts), TargetRule::Max(), rng);
  EXPECT_EQ(y(0), -0.3);
  EXPECT_EQ(y(1), 2.0);
  EXPECT_EQ(y(2), 7.5);
}

TEST(DiscreteAgentTest, BootstrapTargetsRespectTheRuleOrdering) {
  DiscreteAgent agent(DiscreteAlgorithm::kCdq, {}, {}, 5);
  std::vector<Transition> ts(
      8, {EncodeMdpState(MdpState::kS0), Eigen::VectorXd::Constant(1, 0.5), 0.0,
          EncodeMdpState(MdpState::kS1), false});
  const TransitionBatch batch = MakeBatch(ts);
  Rng a(9), b(9);
  const Eigen::VectorXd lo = agent.Targets(batch, TargetRule::Min(), a);
  const Eigen::VectorXd hi = agent.Targets(batch, TargetRule::Max(), b);
  for (int j = 0; j < 8; ++j) {
    EXPECT_LE(lo(j), hi(j));
    EXPECT_EQ(lo(j), lo(0));
  }
}

TEST(DiscreteAgentTest, GreedyBanditDrivesTheRule) {
  DiscreteAgentConfig config;
  SyntheticMdp env({1.0, 5.0}, 3);
  DiscreteAgent agent(DiscreteAlgorithm::kBeCdq, config, {}, 6);
  agent.mutable_bandit().epsilon = 0.0;
  agent.mutable_bandit().qb = {0.0, 1e9};
  for (int e = 0; e < 5; ++e) {
    const EpisodeOutcome out = agent.TrainEpisode(env);
    EXPECT_EQ(out.bias_choice, kOverestimate);
    EXPECT_EQ(agent.last_rule().kind, TargetRuleKind::kMax);
  }
  agent.mutable_bandit().qb = {1e9, 0.0};
  const EpisodeOutcome out = agent.TrainEpisode(env);
  EXPECT_EQ(out.bias_choice, kUnderestimate);
  EXPECT_EQ(agent.last_rule().kind, TargetRuleKind::kMin);
  EXPECT_EQ(agent.bandit().episode_count, 6);
}

TEST(DiscreteAgentTest, EpisodesHaveOneOrTwoSteps) {
  SyntheticMdp env({-1.0, 5.0}, 1);
  DiscreteAgent agent(DiscreteAlgorithm::kQLearning, {}, {}, 2);
  std::size_t stored = 0;
  for (int e = 0; e < 200; ++e) {
    const EpisodeOutcome out = agent.TrainEpisode(env);
    EXPECT_GE(out.length, 1);
    EXPECT_LE(out.length, 2);
    EXPECT_FALSE(out.bias_choice.has_value());
    stored += static_cast<std::size_t>(out.length);
  }
  EXPECT_EQ(agent.buffer().size(), stored);
}

TEST(DiscreteAgentTest, UpdateReducesErrorOnFixedTargets) {
  // With sigma = 0 every S1 transition is terminal with reward mu, so the S1
  // critic regresses onto the constant 1.
  DiscreteAgentConfig config;
  config.learning_rate = 1e-3;
  SyntheticMdp env({1.0, 0.0}, 0);
  DiscreteAgent agent(DiscreteAlgorithm::kCdq, config, {}, 8);
  for (int e = 0; e < 50; ++e) agent.TrainEpisode(env);
  auto error = [&] {
    double sum = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double a = -1.0 + 0.1 * i;
      const double d = agent.critics().Value(MdpState::kS1, 0, a) - 1.0;
      sum += d * d;
    }
    return sum;
  };
  const double before = error();
  for (int k = 0; k < 20; ++k) agent.UpdateCritics(TargetRule::Min());
  EXPECT_LT(error(), before);
}

TEST(RunDiscreteTest, SameSeedSameTrace) {
  DiscreteRunConfig config;
  config.algorithm = DiscreteAlgorithm::kBeCdq;
  config.episodes = 100;
  config.eval_every = 20;
  const RunResult a = RunDiscrete(config, 11);
  const RunResult b = RunDiscrete(config, 11);
  ASSERT_EQ(a.records.size(), 5u);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].mean_return, b.records[i].mean_return);
    EXPECT_EQ(a.records[i].env_step, b.records[i].env_step);
    EXPECT_EQ(a.records[i].episode, static_cast<std::int64_t>(20 * (i + 1)));
    EXPECT_TRUE(a.records[i].bandit_choice.has_value());
  }
  EXPECT_EQ(a.episode_choices, b.episode_choices);
  EXPECT_EQ(a.episode_epsilons.size(), 100u);
  EXPECT_NEAR(a.episode_epsilons.back(), 0.9 * std::pow(0.99, 100), 1e-12);
}

TEST(RunDiscreteTest, NoiseFreeMdpIsSolved) {
  for (double mu : {1.0, -1.0}) {
    for (DiscreteAlgorithm algo : {DiscreteAlgorithm::kQLearning,
                                   DiscreteAlgorithm::kCdq,
                                   DiscreteAlgorithm::kCdqMax,
                                   DiscreteAlgorithm::kBeCdq}) {
      DiscreteRunConfig config;
      config.algorithm = algo;
      config.mdp = {mu, 0.0};
      config.episodes = 300;
      const RunResult r = RunDiscrete(config, 1);
      EXPECT_EQ(r.records.back().mean_return, std::max(mu, 0.0))
          << DiscreteAlgorithmName(algo) << " mu=" << mu;
    }
  }
}

TEST(DiscreteConfigTest, RejectsBadValues) {
  DiscreteAgentConfig c;
  c.action_samples = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = {};
  c.explore_epsilon = 1.5;
  EXPECT_THROW(c.Validate(), ConfigError);
  EXPECT_EQ(ParseDiscreteAlgorithm(DiscreteAlgorithmName(DiscreteAlgorithm::kCdqMax)),
            DiscreteAlgorithm::kCdqMax);
  EXPECT_THROW(ParseDiscreteAlgorithm("dqn"), ConfigError);
}

}  // namespace
}  // namespace bbrl
