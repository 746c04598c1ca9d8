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

#ifndef EVCHARGE_AGENTS_HPP_
#define EVCHARGE_AGENTS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "evcharge/grid.hpp"
#include "evcharge/linucb.hpp"
#include "evcharge/mobility.hpp"
#include "evcharge/qlearning.hpp"
#include "evcharge/rng.hpp"

namespace evcharge {

// A: relative price steps (increase / decrease / keep), price target only.
// B: absolute levels 10/25/50/75/100 % of the maximum price or power.
enum class ActionVariant { A, B };
enum class ControlTarget { price, power };
enum class UtilityVariant { price, income };
enum class Profile {
  constant_loading,
  workload_proportional,
  random,
  linucb_disjoint,
  linucb_hybrid,
  q_learning,
};

ActionVariant parse_action_variant(std::string_view name);
ControlTarget parse_control_target(std::string_view name);
UtilityVariant parse_utility_variant(std::string_view name);
Profile parse_profile(std::string_view name);
std::string_view to_string(ActionVariant v);
std::string_view to_string(ControlTarget t);
std::string_view to_string(UtilityVariant u);
std::string_view to_string(Profile p);

// Variant A action ids.
inline constexpr int kIncreasePrice = 0;
inline constexpr int kDecreasePrice = 1;
inline constexpr int kKeepPrice = 2;
// Variant B: action id i selects kOfferLevels[i].
inline constexpr int kFullOffer = 4;

struct ActionModel {
  ActionVariant variant = ActionVariant::B;
  ControlTarget target = ControlTarget::power;
  double price_min = 0.05;   // currency / kWh
  double price_max = 0.50;
  double price_step = 0.05;  // variant A only

  void validate() const;
  int action_count() const { return variant == ActionVariant::A ? 3 : 5; }
};

// Price moves a station already made in the current simulation second.
struct StepActions {
  bool increased = false;
  bool decreased = false;
};

std::vector<int> valid_actions(const ActionModel& model, double current_price,
                               StepActions done);

struct UtilityParams {
  UtilityVariant variant = UtilityVariant::income;
  double gamma = 0.1;  // balancing factor (not the Q-learning discount)
};

// Price:  -mean_load - max_load - gamma * mean_price
// Income: -mean_load - max_load + gamma * income
double compute_reward(const LoadWindow& window, const UtilityParams& params);

inline constexpr int kContextDimension = 10;
inline constexpr int kSharedDimension = 3;
inline constexpr double kLoadingClip = 1.5;

struct Context {
  ContextVector x;  // per-arm features, d = 10
  ContextVector z;  // hybrid shared features, k = 3
};

// x = [occupancy, own loading, 5 neighbor loadings, sin(2 pi h/24),
//      cos(2 pi h/24), soc]
// Own loading is clipped at 1.5; neighbor loadings are clipped at 1.5 and
// divided by 1.5, missing neighbors are 0. z = [sin, cos, soc].
Context build_context(const ChargingStation& station, const GridState& grid,
                      double soc, std::int64_t t);

// Tabular state for Q-learning: 5 loading bins of width 0.25 (the last one
// open-ended), 6 four-hour bins, 4 state-of-charge bins.
inline constexpr int kStateCount = 5 * 6 * 4;
int discretize_state(double loading, std::int64_t t, double soc);

// Offer level index nearest to `fraction` (ties pick the lower level).
int nearest_level(double fraction);

struct AgentParams {
  Profile profile = Profile::constant_loading;
  ActionModel actions;
  UtilityParams utility;
  double alpha = 1.0;  // LinUCB exploration width
  QLearnerConfig q;
};

struct PendingDecision {
  int agent = 0;
  int action = 0;
  Context context;
  std::int64_t time = 0;
  int state = 0;
  int vehicle = -1;
};

// Decision agent of one charging station.
class Agent {
 public:
  Agent(int id, const AgentParams& params, std::uint64_t seed);

  int id() const { return id_; }
  const AgentParams& params() const { return params_; }

  // Chooses an action for the arriving vehicle and records it as pending.
  // `own_loading` is the published loading of the station's substation.
  int decide(const Context& ctx, double own_loading, double current_price,
             std::span<const int> valid, int state, int vehicle,
             std::int64_t t);

  // Applies `action` to the station's offer. ConstantLoading never changes
  // the offer.
  void apply(int action, ChargingStation& station, StepActions& done) const;

  bool has_pending() const { return pending_.has_value(); }
  const PendingDecision& pending() const;
  // Computes the reward for the pending decision, trains the learner and
  // clears the pending slot. Throws if nothing is pending.
  double resolve(const LoadWindow& window, int next_state);

  std::int64_t decisions() const { return decisions_; }
  std::int64_t resolutions() const { return resolutions_; }

  const LinUcb* linucb() const { return linucb_ ? &*linucb_ : nullptr; }
  const QTable* qtable() const { return qtable_ ? &*qtable_ : nullptr; }

 private:
  int workload_action(double own_loading, double current_price,
                      std::span<const int> valid) const;

  int id_;
  AgentParams params_;
  Rng explore_rng_;
  Rng tie_rng_;
  std::optional<LinUcb> linucb_;
  std::optional<QTable> qtable_;
  std::optional<PendingDecision> pending_;
  std::int64_t decisions_ = 0;
  std::int64_t resolutions_ = 0;
};

}  // namespace evcharge

#endif  // EVCHARGE_AGENTS_HPP_
