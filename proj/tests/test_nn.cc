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

#include "bbrl/adam.h"
#include "bbrl/errors.h"
#include "bbrl/mlp.h"
#include "test_util.h"

namespace bbrl {
namespace {

using testing::GradientsAgree;
using testing::ReferenceForward;

MlpSpec Spec(std::vector<int> sizes, Activation hidden = Activation::kTanh,
             Activation out = Activation::kIdentity) {
  return MlpSpec{std::move(sizes), hidden, out};
}

TEST(MlpSpecTest, RejectsDegenerateTopologies) {
  EXPECT_THROW(Spec({3}).Validate(), ConfigError);
  EXPECT_THROW(Spec({3, 0, 1}).Validate(), ConfigError);
  EXPECT_NO_THROW(Spec({1, 1}).Validate());
}

TEST(MlpTest, ActivationNamesRoundTrip) {
  for (Activation a :
       {Activation::kIdentity, Activation::kTanh, Activation::kRelu}) {
    EXPECT_EQ(ParseActivation(ActivationName(a)), a);
  }
  EXPECT_THROW(ParseActivation("sigmoid"), ConfigError);
}

TEST(MlpTest, ZeroParametersGiveZeroOutput) {
  const MlpSpec spec = Spec({3, 5, 2});
  const MlpParams params = MlpParams::Zeros(spec);
  const Eigen::VectorXd y = Forward(params, spec, Eigen::Vector3d(1, -2, 3));
  EXPECT_EQ(y, Eigen::VectorXd::Zero(2));
}

TEST(MlpTest, IdentityLayerPassesInputThrough) {
  const MlpSpec spec = Spec({3, 3}, Activation::kIdentity);
  MlpParams params = MlpParams::Zeros(spec);
  params.layers[0].weight.setIdentity();
  const Eigen::Vector3d x(0.5, -1.5, 2.0);
  EXPECT_EQ(Forward(params, spec, x), Eigen::VectorXd(x));
}

TEST(MlpTest, TanhNetMatchesStraightLineReference) {
  const MlpSpec spec = Spec({2, 4, 1});
  Rng rng(7);
  const MlpParams params = InitParams(spec, rng);
  const double y = Forward(params, spec, Eigen::Vector2d(0.3, -0.7))(0);
  EXPECT_NEAR(y, ReferenceForward(params, spec, {0.3, -0.7})[0], 1e-14);
}

TEST(MlpTest, ReluAndTanhOutputsMatchReferenceOnBatches) {
  const MlpSpec spec = Spec({3, 6, 5, 2}, Activation::kRelu, Activation::kTanh);
  Rng rng(3);
  const MlpParams params = InitParams(spec, rng);
  Eigen::MatrixXd inputs = Eigen::MatrixXd::Random(3, 9);
  const Eigen::MatrixXd batch = EvaluateBatch(params, spec, inputs);
  for (int j = 0; j < inputs.cols(); ++j) {
    const std::vector<double> ref = ReferenceForward(
        params, spec, {inputs(0, j), inputs(1, j), inputs(2, j)});
    for (int i = 0; i < 2; ++i) EXPECT_NEAR(batch(i, j), ref[i], 1e-14);
  }
}

TEST(MlpTest, TanhSaturatesWithoutOverflow) {
  const MlpSpec spec = Spec({1, 1}, Activation::kTanh, Activation::kTanh);
  MlpParams params = MlpParams::Zeros(spec);
  params.layers[0].weight(0, 0) = 1.0;
  EXPECT_EQ(Forward(params, spec, Eigen::VectorXd::Constant(1, 800.0))(0), 1.0);
  EXPECT_EQ(Forward(params, spec, Eigen::VectorXd::Constant(1, -800.0))(0),
            -1.0);
}

TEST(MlpTest, InitIsUniformWithinFanInBound) {
  const MlpSpec spec = Spec({16, 4, 1});
  Rng rng(11);
  const MlpParams params = InitParams(spec, rng);
  EXPECT_LE(params.layers[0].weight.cwiseAbs().maxCoeff(), 0.25);
  EXPECT_LE(params.layers[1].weight.cwiseAbs().maxCoeff(), 0.5);
  EXPECT_LE(params.layers[1].bias.cwiseAbs().maxCoeff(), 0.5);
  EXPECT_GT(params.layers[0].weight.cwiseAbs().maxCoeff(), 0.2);
}

TEST(MlpTest, WrongInputWidthIsConfigError) {
  const MlpSpec spec = Spec({3, 2});
  const MlpParams params = MlpParams::Zeros(spec);
  EXPECT_THROW(Forward(params, spec, Eigen::Vector2d(1, 2)), ConfigError);
  EXPECT_THROW(CheckShape(params, Spec({3, 3})), ConfigError);
}

TEST(MlpTest, NonFiniteIntermediateNamesTheLayer) {
  const MlpSpec spec = Spec({1, 2, 1});
  MlpParams params = MlpParams::Zeros(spec);
  params.layers[1].bias(0) = std::numeric_limits<double>::quiet_NaN();
  try {
    Forward(params, spec, Eigen::VectorXd::Ones(1));
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("layer 1"), std::string::npos)
        << e.what();
  }
}

TEST(BackwardTest, ZeroUpstreamGivesZeroGradient) {
  const MlpSpec spec = Spec({3, 4, 2});
  Rng rng(1);
  const MlpParams params = InitParams(spec, rng);
  const Gradient g = BackwardParams(params, spec, Eigen::Vector3d(1, 2, 3),
                                    Eigen::VectorXd::Zero(2));
  for (double v : Flatten(g.layers)) EXPECT_EQ(v, 0.0);
}

TEST(BackwardTest, LinearNetHasAnalyticGradients) {
  const MlpSpec spec = Spec({1, 1}, Activation::kIdentity);
  MlpParams params = MlpParams::Zeros(spec);
  params.layers[0].weight(0, 0) = 3.0;
  params.layers[0].bias(0) = -1.0;
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(1, 2.0);
  const Eigen::VectorXd up = Eigen::VectorXd::Ones(1);
  const Gradient g = BackwardParams(params, spec, x, up);
  EXPECT_EQ(g.layers[0].weight(0, 0), 2.0);
  EXPECT_EQ(g.layers[0].bias(0), 1.0);
  EXPECT_EQ(BackwardInput(params, spec, x, up)(0), 3.0);
}

TEST(BackwardTest, ZeroWeightsGiveZeroInputGradient) {
  const MlpSpec spec = Spec({3, 4, 1});
  const MlpParams params = MlpParams::Zeros(spec);
  EXPECT_EQ(BackwardInput(params, spec, Eigen::Vector3d(1, 2, 3),
                          Eigen::VectorXd::Ones(1)),
            Eigen::VectorXd(Eigen::VectorXd::Zero(3)));
}

// Central differences on L = <upstream, f(x)> against the analytic pass.
void ExpectFiniteDifferenceAgreement(const MlpSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  MlpParams params = InitParams(spec, rng);
  Eigen::VectorXd x(spec.input_dim());
  for (int i = 0; i < x.size(); ++i) x(i) = rng.Uniform(-1.5, 1.5);
  Eigen::VectorXd up(spec.output_dim());
  for (int i = 0; i < up.size(); ++i) up(i) = rng.Uniform(-1.0, 1.0);
  auto loss = [&](const MlpParams& p, const Eigen::VectorXd& in) {
    return up.dot(Forward(p, spec, in));
  };
  const double h = 1e-5;

  const std::vector<double> analytic =
      Flatten(BackwardParams(params, spec, x, up).layers);
  for (std::size_t k = 0; k < analytic.size(); ++k) {
    double& slot = ScalarAt(params.layers, k);
    const double saved = slot;
    slot = saved + h;
    const double plus = loss(params, x);
    slot = saved - h;
    const double minus = loss(params, x);
    slot = saved;
    const double numeric = (plus - minus) / (2 * h);
    EXPECT_TRUE(GradientsAgree(analytic[k], numeric))
        << "param " << k << " analytic " << analytic[k] << " numeric "
        << numeric;
  }
  const Eigen::VectorXd input_grad = BackwardInput(params, spec, x, up);
  for (int i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    const double numeric = (loss(params, xp) - loss(params, xm)) / (2 * h);
    EXPECT_TRUE(GradientsAgree(input_grad(i), numeric))
        << "input " << i << " analytic " << input_grad(i) << " numeric "
        << numeric;
  }
}

TEST(BackwardTest, Tanh381MatchesFiniteDifferences) {
  ExpectFiniteDifferenceAgreement(Spec({3, 8, 1}), 5);
}

TEST(BackwardTest, DeepMixedNetsMatchFiniteDifferences) {
  ExpectFiniteDifferenceAgreement(
      Spec({4, 7, 6, 3}, Activation::kRelu, Activation::kTanh), 9);
  ExpectFiniteDifferenceAgreement(
      Spec({2, 5, 5, 2}, Activation::kTanh, Activation::kTanh), 10);
}

TEST(BackwardTest, BatchedBackwardSumsPerSampleGradients) {
  const MlpSpec spec = Spec({2, 5, 3});
  Rng rng(21);
  const MlpParams params = InitParams(spec, rng);
  const Eigen::MatrixXd inputs = Eigen::MatrixXd::Random(2, 4);
  const Eigen::MatrixXd upstream = Eigen::MatrixXd::Random(3, 4);
  Gradient batch = Gradient::ZerosLike(params);
  Eigen::MatrixXd input_grad;
  BackwardBatch(params, spec, ForwardBatch(params, spec, inputs), upstream,
                &batch, &input_grad);
  std::vector<double> summed(params.NumScalars(), 0.0);
  for (int j = 0; j < 4; ++j) {
    const std::vector<double> g = Flatten(
        BackwardParams(params, spec, inputs.col(j), upstream.col(j)).layers);
    for (std::size_t k = 0; k < g.size(); ++k) summed[k] += g[k];
    const Eigen::VectorXd gi =
        BackwardInput(params, spec, inputs.col(j), upstream.col(j));
    for (int i = 0; i < 2; ++i) EXPECT_NEAR(input_grad(i, j), gi(i), 1e-15);
  }
  const std::vector<double> flat = Flatten(batch.layers);
  for (std::size_t k = 0; k < flat.size(); ++k) {
    EXPECT_NEAR(flat[k], summed[k], 1e-13);
  }
}

TEST(BackwardTest, IdenticalInputsGiveBitIdenticalResults) {
  const MlpSpec spec = Spec({3, 6, 2}, Activation::kRelu);
  Rng a(4), b(4);
  const MlpParams pa = InitParams(spec, a);
  const MlpParams pb = InitParams(spec, b);
  const Eigen::Vector3d x(0.1, 0.2, -0.3);
  EXPECT_EQ(Flatten(pa.layers), Flatten(pb.layers));
  EXPECT_EQ(Forward(pa, spec, x), Forward(pb, spec, x));
  EXPECT_EQ(Flatten(BackwardParams(pa, spec, x, Eigen::Vector2d(1, -1)).layers),
            Flatten(BackwardParams(pb, spec, x, Eigen::Vector2d(1, -1)).layers));
}

// Adam

MlpParams ScalarParam(double value) {
  MlpParams p = MlpParams::Zeros(Spec({1, 1}, Activation::kIdentity));
  p.layers[0].weight(0, 0) = value;
  return p;
}

Gradient ScalarGrad(const MlpParams& like, double value) {
  Gradient g = Gradient::ZerosLike(like);
  g.layers[0].weight(0, 0) = value;
  return g;
}

TEST(AdamTest, ZeroGradientLeavesParamsUnchanged) {
  MlpParams p = ScalarParam(1.0);
  AdamState state = MakeAdamState(p, AdamConfig{});
  AdamStep(p, Gradient::ZerosLike(p), state);
  EXPECT_EQ(p.layers[0].weight(0, 0), 1.0);
  EXPECT_EQ(state.t, 1);
}

TEST(AdamTest, FirstStepMovesByLearningRate) {
  MlpParams p = ScalarParam(1.0);
  AdamConfig config;
  config.learning_rate = 1e-3;
  AdamState state = MakeAdamState(p, config);
  AdamStep(p, ScalarGrad(p, 1.0), state);
  // m_hat = 1, v_hat = 1 -> step = lr / (1 + eps).
  EXPECT_NEAR(p.layers[0].weight(0, 0), 1.0 - 1e-3 / (1.0 + 1e-8), 1e-15);
}

TEST(AdamTest, TwoStepsMatchHandTrace) {
  MlpParams p = ScalarParam(1.0);
  AdamConfig config;
  config.learning_rate = 1e-3;
  AdamState state = MakeAdamState(p, config);
  AdamStep(p, ScalarGrad(p, 1.0), state);
  AdamStep(p, ScalarGrad(p, 1.0), state);
  // Hand trace with g = 1: m1 = .1, v1 = .001, m2 = .19, v2 = .001999.
  const double m2 = 0.19, v2 = 0.001999;
  const double c1 = 1 - 0.9 * 0.9, c2 = 1 - 0.999 * 0.999;
  const double step1 = 1e-3 * 1.0 / (1.0 + 1e-8);
  const double step2 = 1e-3 * (m2 / c1) / (std::sqrt(v2 / c2) + 1e-8);
  EXPECT_NEAR(p.layers[0].weight(0, 0), 1.0 - step1 - step2, 1e-12);
  EXPECT_NEAR(state.m.layers[0].weight(0, 0), m2, 1e-15);
  EXPECT_NEAR(state.v.layers[0].weight(0, 0), v2, 1e-15);
}

TEST(AdamTest, ZeroLearningRateIsIdentity) {
  const MlpSpec spec = Spec({3, 4, 2});
  Rng rng(2);
  MlpParams p = InitParams(spec, rng);
  const std::vector<double> before = Flatten(p.layers);
  AdamConfig config;
  config.learning_rate = 0.0;
  AdamState state = MakeAdamState(p, config);
  Gradient g = Gradient::ZerosLike(p);
  for (auto& layer : g.layers) {
    layer.weight.setRandom();
    layer.bias.setRandom();
  }
  for (int i = 0; i < 5; ++i) AdamStep(p, g, state);
  EXPECT_EQ(Flatten(p.layers), before);
  EXPECT_EQ(state.t, 5);
}

TEST(AdamTest, MovesAgainstGradientSign) {
  MlpParams p = ScalarParam(0.0);
  AdamState state = MakeAdamState(p, AdamConfig{});
  AdamStep(p, ScalarGrad(p, -4.0), state);
  EXPECT_GT(p.layers[0].weight(0, 0), 0.0);
}

TEST(AdamTest, RejectsNonFiniteGradientAndShapeMismatch) {
  MlpParams p = ScalarParam(1.0);
  AdamState state = MakeAdamState(p, AdamConfig{});
  EXPECT_THROW(
      AdamStep(p, ScalarGrad(p, std::numeric_limits<double>::infinity()), state),
      NumericalError);
  const MlpParams other = MlpParams::Zeros(Spec({2, 1}));
  EXPECT_THROW(AdamStep(p, Gradient::ZerosLike(other), state), ConfigError);
}

}  // namespace
}  // namespace bbrl
