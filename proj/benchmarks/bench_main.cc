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


#include <benchmark/benchmark.h>

#include "bbrl/bias_bandit.h"
#include "bbrl/environments.h"
#include "bbrl/mlp.h"
#include "bbrl/replay_buffer.h"
#include "bbrl/td3_agent.h"

namespace bbrl {
namespace {

MlpSpec CriticSpec(int width) {
  return {{4, width, width, 1}, Activation::kRelu, Activation::kIdentity};
}

Eigen::MatrixXd RandomInputs(int rows, int cols, Rng& rng) {
  Eigen::MatrixXd x(rows, cols);
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.Uniform(-1.0, 1.0);
  return x;
}

// args: hidden width, batch size
void BM_MlpForward(benchmark::State& state) {
  Rng rng(0);
  const MlpSpec spec = CriticSpec(static_cast<int>(state.range(0)));
  const MlpParams params = InitParams(spec, rng);
  const Eigen::MatrixXd x = RandomInputs(4, static_cast<int>(state.range(1)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(EvaluateBatch(params, spec, x));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_MlpForward)->Args({64, 256})->Args({256, 256});

void BM_MlpForwardBackward(benchmark::State& state) {
  Rng rng(0);
  const MlpSpec spec = CriticSpec(static_cast<int>(state.range(0)));
  const MlpParams params = InitParams(spec, rng);
  const int n = static_cast<int>(state.range(1));
  const Eigen::MatrixXd x = RandomInputs(4, n, rng);
  const Eigen::MatrixXd upstream = Eigen::MatrixXd::Ones(1, n);
  Gradient grad;
  Eigen::MatrixXd input_grad;
  for (auto _ : state) {
    const ForwardTrace trace = ForwardBatch(params, spec, x);
    BackwardBatch(params, spec, trace, upstream, &grad, &input_grad);
    benchmark::DoNotOptimize(grad);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_MlpForwardBackward)->Args({64, 256})->Args({256, 256});

void BM_ReplaySample(benchmark::State& state) {
  ReplayBuffer buffer(100'000);
  Rng rng(1);
  for (int i = 0; i < 100'000; ++i) {
    buffer.Push({Eigen::VectorXd::Random(3), Eigen::VectorXd::Random(1),
                 rng.Uniform(-1.0, 0.0), Eigen::VectorXd::Random(3), false});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        buffer.SampleBatch(static_cast<std::size_t>(state.range(0)), rng));
  }
}
BENCHMARK(BM_ReplaySample)->Arg(100)->Arg(256);

void BM_Td3TrainStep(benchmark::State& state) {
  EnvironmentOptions options;
  std::unique_ptr<Environment> env = MakeEnvironment(options, 0);
  Td3Config config;
  const int width = static_cast<int>(state.range(0));
  config.actor_hidden = config.critic_hidden = {width, width};
  config.batch_size = static_cast<int>(state.range(1));
  Td3Agent agent(env->spec(), config, 0);
  Eigen::VectorXd s = env->Reset();
  for (int i = 0; i < 2000; ++i) {
    const Eigen::VectorXd a = agent.RandomAction();
    StepResult out = env->Step(a);
    agent.Observe({s, a, out.reward, out.next_state, out.done});
    s = out.next_state;
  }
  for (auto _ : state) agent.TrainStep(TargetRule::Min());
}
BENCHMARK(BM_Td3TrainStep)
    ->Args({32, 100})
    ->Args({256, 256})
    ->Unit(benchmark::kMillisecond);

void BM_BanditEpisode(benchmark::State& state) {
  BanditState bandit;
  Rng rng(2);
  for (auto _ : state) {
    const int arm = ChooseArm(bandit, rng);
    UpdateArm(bandit, arm, arm == kOverestimate ? 1.0 : 0.0);
    AdvanceEpsilonHard(bandit);
  }
}
BENCHMARK(BM_BanditEpisode);

}  // namespace
}  // namespace bbrl

BENCHMARK_MAIN();
