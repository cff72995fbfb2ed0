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

#include "bbrl/replay_buffer.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "bbrl/errors.h"

namespace bbrl {

Transition TransitionBatch::Get(std::size_t i) const {
  const auto c = static_cast<Eigen::Index>(i);
  return {states.col(c), actions.col(c), rewards(c), next_states.col(c),
          done[i]};
}

TransitionBatch MakeBatch(const std::vector<Transition>& transitions) {
  TransitionBatch batch;
  if (transitions.empty()) return batch;
  const auto n = static_cast<Eigen::Index>(transitions.size());
  const auto sd = transitions.front().state.size();
  const auto ad = transitions.front().action.size();
  batch.states.resize(sd, n);
  batch.actions.resize(ad, n);
  batch.rewards.resize(n);
  batch.next_states.resize(sd, n);
  batch.done.resize(transitions.size());
  for (Eigen::Index j = 0; j < n; ++j) {
    const Transition& t = transitions[static_cast<std::size_t>(j)];
    batch.states.col(j) = t.state;
    batch.actions.col(j) = t.action;
    batch.rewards(j) = t.reward;
    batch.next_states.col(j) = t.next_state;
    batch.done[static_cast<std::size_t>(j)] = t.done;
  }
  return batch;
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ConfigError("replay capacity must be positive");
}

void ReplayBuffer::Push(const Transition& t) {
  if (size_ == 0 && states_.empty()) {
    state_dim_ = static_cast<int>(t.state.size());
    action_dim_ = static_cast<int>(t.action.size());
  }
  if (t.state.size() != state_dim_ || t.next_state.size() != state_dim_ ||
      t.action.size() != action_dim_) {
    throw ConfigError("transition dimensions (" +
                      std::to_string(t.state.size()) + ", " +
                      std::to_string(t.action.size()) +
                      ") do not match the buffer (" +
                      std::to_string(state_dim_) + ", " +
                      std::to_string(action_dim_) + ")");
  }
  if (!std::isfinite(t.reward)) {
    throw NumericalError("non-finite reward pushed to replay buffer");
  }

  const std::size_t sd = static_cast<std::size_t>(state_dim_);
  const std::size_t ad = static_cast<std::size_t>(action_dim_);
  if (size_ < capacity_) {
    states_.insert(states_.end(), t.state.data(), t.state.data() + sd);
    actions_.insert(actions_.end(), t.action.data(), t.action.data() + ad);
    rewards_.push_back(t.reward);
    next_states_.insert(next_states_.end(), t.next_state.data(),
                        t.next_state.data() + sd);
    done_.push_back(t.done ? 1 : 0);
    ++size_;
  } else {
    std::copy(t.state.data(), t.state.data() + sd,
              states_.begin() + static_cast<std::ptrdiff_t>(next_ * sd));
    std::copy(t.action.data(), t.action.data() + ad,
              actions_.begin() + static_cast<std::ptrdiff_t>(next_ * ad));
    rewards_[next_] = t.reward;
    std::copy(t.next_state.data(), t.next_state.data() + sd,
              next_states_.begin() + static_cast<std::ptrdiff_t>(next_ * sd));
    done_[next_] = t.done ? 1 : 0;
  }
  next_ = (next_ + 1) % capacity_;
}

Transition ReplayBuffer::Slot(std::size_t slot) const {
  const std::size_t sd = static_cast<std::size_t>(state_dim_);
  const std::size_t ad = static_cast<std::size_t>(action_dim_);
  Transition t;
  t.state = Eigen::Map<const Eigen::VectorXd>(states_.data() + slot * sd,
                                              state_dim_);
  t.action = Eigen::Map<const Eigen::VectorXd>(actions_.data() + slot * ad,
                                               action_dim_);
  t.reward = rewards_[slot];
  t.next_state = Eigen::Map<const Eigen::VectorXd>(
      next_states_.data() + slot * sd, state_dim_);
  t.done = done_[slot] != 0;
  return t;
}

Transition ReplayBuffer::At(std::size_t i) const {
  if (i >= size_) throw ContractError("replay index out of range");
  const std::size_t oldest = size_ < capacity_ ? 0 : next_;
  return Slot((oldest + i) % capacity_);
}

std::vector<std::size_t> ReplayBuffer::SampleIndices(std::size_t n,
                                                     Rng& rng) const {
  if (empty()) throw ContractError("cannot sample from an empty replay buffer");
  if (n == 0) throw ContractError("batch size must be positive");
  std::vector<std::size_t> slots(n);
  for (auto& s : slots) s = rng.Index(size_);
  return slots;
}

std::vector<Transition> ReplayBuffer::Sample(std::size_t n, Rng& rng) const {
  std::vector<Transition> out;
  out.reserve(n);
  for (std::size_t slot : SampleIndices(n, rng)) out.push_back(Slot(slot));
  return out;
}

TransitionBatch ReplayBuffer::SampleBatch(std::size_t n, Rng& rng) const {
  const std::vector<std::size_t> slots = SampleIndices(n, rng);
  const std::size_t sd = static_cast<std::size_t>(state_dim_);
  const std::size_t ad = static_cast<std::size_t>(action_dim_);
  const auto cols = static_cast<Eigen::Index>(n);
  TransitionBatch batch;
  batch.states.resize(state_dim_, cols);
  batch.actions.resize(action_dim_, cols);
  batch.rewards.resize(cols);
  batch.next_states.resize(state_dim_, cols);
  batch.done.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t s = slots[j];
    const auto c = static_cast<Eigen::Index>(j);
    batch.states.col(c) =
        Eigen::Map<const Eigen::VectorXd>(states_.data() + s * sd, state_dim_);
    batch.actions.col(c) = Eigen::Map<const Eigen::VectorXd>(
        actions_.data() + s * ad, action_dim_);
    batch.rewards(c) = rewards_[s];
    batch.next_states.col(c) = Eigen::Map<const Eigen::VectorXd>(
        next_states_.data() + s * sd, state_dim_);
    batch.done[j] = done_[s] != 0;
  }
  return batch;
}

}  // namespace bbrl
