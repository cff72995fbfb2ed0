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
#include <limits>

#include <gtest/gtest.h>

#include "bbrl/errors.h"
#include "bbrl/target_rules.h"

namespace bbrl {
namespace {

const TargetRule kAll[] = {TargetRule::Min(), TargetRule::Max(),
                           TargetRule::Average(), TargetRule::RandomMask(1),
                           TargetRule::RandomMask(0)};

TEST(ComputeTargetTest, WorkedExamples) {
  EXPECT_NEAR(ComputeTarget(TargetRule::Min(), 1, false, 0.99, 2, 3), 2.98,
              1e-12);
  EXPECT_NEAR(ComputeTarget(TargetRule::Max(), 1, false, 0.99, 2, 3), 3.97,
              1e-12);
  EXPECT_NEAR(ComputeTarget(TargetRule::Average(), 1, false, 0.99, 2, 3),
              3.475, 1e-12);
  EXPECT_NEAR(ComputeTarget(TargetRule::RandomMask(1), 1, false, 0.99, 2, 3),
              2.98, 1e-12);
  EXPECT_NEAR(ComputeTarget(TargetRule::RandomMask(0), 1, false, 0.99, 2, 3),
              3.97, 1e-12);
}

TEST(ComputeTargetTest, TerminalReturnsReward) {
  for (const TargetRule& rule : kAll) {
    EXPECT_EQ(ComputeTarget(rule, -1.25, true, 0.99, 100, -100), -1.25);
  }
}

TEST(ComputeTargetTest, EqualCriticsMakeRulesCoincide) {
  const double expected = ComputeTarget(TargetRule::Min(), 0.5, false, 0.9, 4, 4);
  for (const TargetRule& rule : kAll) {
    EXPECT_EQ(ComputeTarget(rule, 0.5, false, 0.9, 4, 4), expected);
  }
}

TEST(ComputeTargetTest, OrderingAndMonotonicityOnRandomInputs) {
  Rng rng(77);
  for (int i = 0; i < 20000; ++i) {
    const double r = rng.Uniform(-10, 10), g = rng.Uniform(0, 1);
    const double q1 = rng.Uniform(-50, 50), q2 = rng.Uniform(-50, 50);
    const double lo = ComputeTarget(TargetRule::Min(), r, false, g, q1, q2);
    const double mid = ComputeTarget(TargetRule::Average(), r, false, g, q1, q2);
    const double hi = ComputeTarget(TargetRule::Max(), r, false, g, q1, q2);
    EXPECT_LE(lo, mid);
    EXPECT_LE(mid, hi);
    const double bump = rng.Uniform(0, 5);
    for (const TargetRule& rule :
         {TargetRule::Min(), TargetRule::Average(), TargetRule::Max()}) {
      const double base = ComputeTarget(rule, r, false, g, q1, q2);
      EXPECT_GE(ComputeTarget(rule, r, false, g, q1 + bump, q2), base);
      EXPECT_GE(ComputeTarget(rule, r, false, g, q1, q2 + bump), base);
    }
  }
}

TEST(ComputeTargetTest, RejectsBadInputs) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(ComputeTarget(TargetRule::Min(), nan, false, 0.9, 1, 1),
               NumericalError);
  EXPECT_THROW(ComputeTarget(TargetRule::Min(), 0, false, 0.9, 1,
                             std::numeric_limits<double>::infinity()),
               NumericalError);
  EXPECT_THROW(ComputeTarget(TargetRule::Min(), 0, false, 1.5, 1, 1),
               ContractError);
  EXPECT_THROW(ComputeTarget(TargetRule::RandomMask(2), 0, false, 0.5, 1, 1),
               ContractError);
}

TEST(TargetRuleTest, NamesRoundTrip) {
  for (TargetRuleKind k : {TargetRuleKind::kMin, TargetRuleKind::kMax,
                           TargetRuleKind::kAverage,
                           TargetRuleKind::kRandomMask}) {
    EXPECT_EQ(ParseTargetRule(TargetRuleName(k)), k);
  }
  EXPECT_THROW(ParseTargetRule("median"), ConfigError);
}

TEST(TargetRuleTest, MaskResamplesFairly) {
  Rng rng(6);
  TargetRule rule = TargetRule::RandomMask(1);
  int ones = 0;
  for (int i = 0; i < 10000; ++i) {
    ResampleMask(rule, rng);
    ones += rule.beta;
  }
  EXPECT_NEAR(ones / 10000.0, 0.5, 0.02);
  TargetRule fixed = TargetRule::Min();
  ResampleMask(fixed, rng);
  EXPECT_EQ(fixed.kind, TargetRuleKind::kMin);
}

MlpSpec ActorSpec() {
  return MlpSpec{{3, 4, 2}, Activation::kRelu, Activation::kTanh};
}

SmoothingConfig Bounds(double lo, double hi) {
  SmoothingConfig c;
  c.action_low = Eigen::Vector2d::Constant(lo);
  c.action_high = Eigen::Vector2d::Constant(hi);
  return c;
}

TEST(SmoothingTest, ZeroNoiseReturnsClippedActorAction) {
  Rng init(1), rng(2);
  const MlpParams actor = InitParams(ActorSpec(), init);
  SmoothingConfig c = Bounds(-2, 2);
  c.sigma_tilde = 0.0;
  const Eigen::MatrixXd s = Eigen::MatrixXd::Random(3, 5);
  const Eigen::MatrixXd expected = ScaleToBounds(
      EvaluateBatch(actor, ActorSpec(), s), c.action_low, c.action_high);
  EXPECT_EQ(SmoothTargetActions(actor, ActorSpec(), s, c, rng), expected);
  c.sigma_tilde = 0.2;
  c.noise_clip = 0.0;
  EXPECT_EQ(SmoothTargetActions(actor, ActorSpec(), s, c, rng), expected);
}

TEST(SmoothingTest, NoiseIsClippedAndHasTheConfiguredSpread) {
  // Zero actor -> mid-range action 0, wide bounds -> a~ is the noise itself.
  const MlpParams actor = MlpParams::Zeros(ActorSpec());
  Rng rng(3);
  SmoothingConfig c = Bounds(-100, 100);
  c.sigma_tilde = 0.2;
  c.noise_clip = 0.5;
  const Eigen::MatrixXd noise = SmoothTargetActions(
      actor, ActorSpec(), Eigen::MatrixXd::Zero(3, 50000), c, rng);
  EXPECT_LE(noise.cwiseAbs().maxCoeff(), 0.5);
  c.noise_clip = 100.0;
  const Eigen::MatrixXd wide = SmoothTargetActions(
      actor, ActorSpec(), Eigen::MatrixXd::Zero(3, 50000), c, rng);
  const double sd = std::sqrt(wide.array().square().mean() -
                              std::pow(wide.mean(), 2));
  EXPECT_NEAR(sd, 0.2, 0.2 * 0.02);
}

TEST(SmoothingTest, ResultStaysInsideBounds) {
  Rng init(4), rng(5);
  const MlpParams actor = InitParams(ActorSpec(), init);
  SmoothingConfig c = Bounds(-1, 1);
  c.sigma_tilde = 3.0;
  c.noise_clip = 10.0;
  const Eigen::MatrixXd a = SmoothTargetActions(
      actor, ActorSpec(), Eigen::MatrixXd::Random(3, 1000), c, rng);
  EXPECT_LE(a.maxCoeff(), 1.0);
  EXPECT_GE(a.minCoeff(), -1.0);
}

TEST(ScaleToBoundsTest, MapsUnitBoxAffinely) {
  const Eigen::VectorXd lo = Eigen::Vector2d(-2, 0), hi = Eigen::Vector2d(2, 10);
  Eigen::MatrixXd unit(2, 3);
  unit << -1, 0, 1, -1, 0, 1;
  Eigen::MatrixXd expected(2, 3);
  expected << -2, 0, 2, 0, 5, 10;
  EXPECT_EQ(ScaleToBounds(unit, lo, hi), expected);
}

MlpParams RandomParams(std::uint64_t seed) {
  Rng rng(seed);
  return InitParams(MlpSpec{{3, 5, 2}}, rng);
}

TEST(EmaTest, TauOneCopies) {
  MlpParams target = RandomParams(1);
  const MlpParams live = RandomParams(2);
  EmaUpdate(target, live, 1.0);
  EXPECT_EQ(Flatten(target.layers), Flatten(live.layers));
}

TEST(EmaTest, EqualNetsAreAFixedPoint) {
  MlpParams target = RandomParams(1);
  const MlpParams live = target;
  EmaUpdate(target, live, 0.005);
  const auto a = Flatten(target.layers), b = Flatten(live.layers);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-16);
}

TEST(EmaTest, RepeatedUpdatesFollowGeometricSeries) {
  MlpParams target = RandomParams(3);
  const MlpParams live = RandomParams(4);
  const auto t0 = Flatten(target.layers), l = Flatten(live.layers);
  const int k = 1000;
  for (int i = 0; i < k; ++i) EmaUpdate(target, live, 0.005);
  const double keep = std::pow(0.995, k);
  const auto tk = Flatten(target.layers);
  for (std::size_t i = 0; i < tk.size(); ++i) {
    EXPECT_NEAR(tk[i], t0[i] * keep + l[i] * (1 - keep), 1e-12);
  }
}

TEST(EmaTest, ContractsDistanceByOneMinusTau) {
  MlpParams target = RandomParams(5);
  const MlpParams live = RandomParams(6);
  auto dist = [&] {
    const auto a = Flatten(target.layers), b = Flatten(live.layers);
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
  };
  const double before = dist();
  EmaUpdate(target, live, 0.1);
  EXPECT_NEAR(dist(), 0.9 * before, 1e-12);
}

TEST(EmaTest, RejectsBadTauAndShapes) {
  MlpParams target = RandomParams(1);
  EXPECT_THROW(EmaUpdate(target, target, 0.0), ConfigError);
  EXPECT_THROW(EmaUpdate(target, target, 1.5), ConfigError);
  Rng rng(0);
  const MlpParams other = InitParams(MlpSpec{{3, 4, 2}}, rng);
  EXPECT_THROW(EmaUpdate(target, other, 0.5), ConfigError);
}

}  // namespace
}  // namespace bbrl
