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

#ifndef BBRL_REPLAY_BUFFER_H_
#define BBRL_REPLAY_BUFFER_H_

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "bbrl/rng.h"

namespace bbrl {

struct Transition {
  Eigen::VectorXd state;
  Eigen::VectorXd action;
  double reward = 0.0;
  Eigen::VectorXd next_state;
  bool done = false;
};

// Column-per-sample view of a minibatch.
struct TransitionBatch {
  Eigen::MatrixXd states;
  Eigen::MatrixXd actions;
  Eigen::VectorXd rewards;
  Eigen::MatrixXd next_states;
  std::vector<bool> done;

  std::size_t size() const { return done.size(); }
  Transition Get(std::size_t i) const;
};

TransitionBatch MakeBatch(const std::vector<Transition>& transitions);

// Fixed-capacity FIFO store; once full, each push overwrites the oldest
// entry. Sampling is uniform with replacement and never mutates contents.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity = 1'000'000);

  // The first push fixes the state/action dimensions; later mismatches
  // throw ConfigError. Non-finite rewards throw NumericalError.
  void Push(const Transition& transition);

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return size_ == 0; }

  // i = 0 is the oldest stored transition.
  Transition At(std::size_t i) const;

  // Throws ContractError on an empty buffer or n == 0.
  std::vector<std::size_t> SampleIndices(std::size_t n, Rng& rng) const;
  std::vector<Transition> Sample(std::size_t n, Rng& rng) const;
  // Same draws as Sample, laid out as matrices.
  TransitionBatch SampleBatch(std::size_t n, Rng& rng) const;

 private:
  Transition Slot(std::size_t slot) const;

  std::size_t capacity_;
  std::size_t size_ = 0;
  std::size_t next_ = 0;  // slot the next push writes to
  int state_dim_ = 0;
  int action_dim_ = 0;
  std::vector<double> states_;
  std::vector<double> actions_;
  std::vector<double> rewards_;
  std::vector<double> next_states_;
  std::vector<char> done_;
};

}  // namespace bbrl

#endif  // BBRL_REPLAY_BUFFER_H_
