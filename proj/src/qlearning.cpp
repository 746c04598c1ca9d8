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

#include "evcharge/qlearning.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <vector>

#include "evcharge/error.hpp"
#include "evcharge/textio.hpp"

namespace evcharge {

void QLearnerConfig::validate() const {
  require(learning_rate >= 0.0 && learning_rate <= 1.0,
          "QLearning: learning rate must be in [0,1]");
  require(discount >= 0.0 && discount <= 1.0,
          "QLearning: discount must be in [0,1]");
  require(epsilon > 0.0 && epsilon <= 1.0,
          "QLearning: epsilon must be in (0,1]");
  require(std::isfinite(initial_value), "QLearning: initial value not finite");
}

QTable::QTable(int action_count, double initial_value)
    : action_count_(action_count), initial_value_(initial_value) {
  require(action_count >= 1, "QTable: need at least one action");
  require(std::isfinite(initial_value), "QTable: initial value not finite");
}

double QTable::value(int state, int action) const {
  auto it = values_.find({state, action});
  return it == values_.end() ? initial_value_ : it->second;
}

void QTable::set(int state, int action, double v) {
  require(action >= 0 && action < action_count_, "QTable: action out of range");
  values_[{state, action}] = v;
}

double QTable::max_value(int state) const {
  double best = value(state, 0);
  for (int a = 1; a < action_count_; ++a) best = std::max(best, value(state, a));
  return best;
}

// Layout:
//   evcharge-qtable 1
//   actions <n> initial <v> entries <m>
//   <state> <action> <value>     (m lines, ascending (state, action))
void QTable::save(std::ostream& out) const {
  out << "evcharge-qtable 1\n";
  out << "actions " << action_count_ << " initial "
      << format_double(initial_value_) << " entries " << values_.size()
      << '\n';
  for (const auto& [key, v] : values_) {
    out << key.first << ' ' << key.second << ' ' << format_double(v) << '\n';
  }
}

QTable QTable::load(std::istream& in) {
  TokenReader tok(in);
  tok.expect("evcharge-qtable");
  if (tok.integer() != 1) throw ConfigError("snapshot: unsupported version");
  tok.expect("actions");
  const auto actions = static_cast<int>(tok.integer());
  tok.expect("initial");
  const double initial = tok.real();
  tok.expect("entries");
  const auto n = tok.integer();
  if (actions < 1 || n < 0) throw ConfigError("snapshot: bad q-table header");
  QTable table(actions, initial);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto s = static_cast<int>(tok.integer());
    const auto a = static_cast<int>(tok.integer());
    if (a < 0 || a >= actions) throw ConfigError("snapshot: action out of range");
    table.values_[{s, a}] = tok.real();
  }
  return table;
}

void q_update(QTable& table, const QLearnerConfig& cfg, int state, int action,
              double reward, int next_state) {
  require(std::isfinite(reward), "QLearning: non-finite reward");
  const double q = table.value(state, action);
  const double target = reward + cfg.discount * table.max_value(next_state);
  table.set(state, action, q + cfg.learning_rate * (target - q));
}

int epsilon_greedy_select(const QTable& table, const QLearnerConfig& cfg,
                          int state, std::span<const int> valid, Rng& rng) {
  require(!valid.empty(), "QLearning: empty set of valid actions");
  double best = -std::numeric_limits<double>::infinity();
  for (int a : valid) best = std::max(best, table.value(state, a));

  std::vector<int> optimal;
  std::vector<int> others;
  for (int a : valid) {
    (table.value(state, a) == best ? optimal : others).push_back(a);
  }
  // Always draw the coin so the stream advances the same way per decision.
  const bool explore = rng.uniform() < cfg.epsilon;
  if (explore && !others.empty()) return others[rng.below(others.size())];
  if (explore) return optimal[rng.below(optimal.size())];
  if (optimal.size() == 1) return optimal.front();
  return optimal[rng.below(optimal.size())];
}

}  // namespace evcharge
