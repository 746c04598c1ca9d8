// Copyright 2026 The evcharge Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EVCHARGE_QLEARNING_HPP_
#define EVCHARGE_QLEARNING_HPP_

#include <iosfwd>
#include <map>
#include <span>
#include <utility>

#include "evcharge/rng.hpp"

namespace evcharge {

struct QLearnerConfig {
  double learning_rate = 0.1;  // in [0, 1]
  double discount = 0.9;       // in [0, 1]
  double epsilon = 0.1;        // in (0, 1]
  double initial_value = 0.0;

  void validate() const;
};

// Sparse action-value table. Pairs never written read as initial_value.
class QTable {
 public:
  QTable(int action_count, double initial_value);

  int action_count() const { return action_count_; }
  double initial_value() const { return initial_value_; }

  double value(int state, int action) const;
  void set(int state, int action, double v);
  // max over every action in [0, action_count).
  double max_value(int state) const;

  // Ordered (state, action) -> value; only explicitly written entries.
  const std::map<std::pair<int, int>, double>& entries() const {
    return values_;
  }

  void save(std::ostream& out) const;
  static QTable load(std::istream& in);

 private:
  int action_count_;
  double initial_value_;
  std::map<std::pair<int, int>, double> values_;
};

// Q(s,a) += lr * (r + discount * max_a' Q(s',a') - Q(s,a))
void q_update(QTable& table, const QLearnerConfig& cfg, int state, int action,
              double reward, int next_state);

// Greedy with probability 1 - epsilon, otherwise a uniform pick among the
// valid actions that are not tied for the maximum. When every valid action
// is tied the pick is uniform over all of them.
int epsilon_greedy_select(const QTable& table, const QLearnerConfig& cfg,
                          int state, std::span<const int> valid, Rng& rng);

}  // namespace evcharge

#endif  // EVCHARGE_QLEARNING_HPP_
