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

#include "evcharge/agents.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "evcharge/error.hpp"

namespace evcharge {
namespace {

constexpr double kPriceEps = 1e-9;

bool contains(std::span<const int> v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// Keeps variant-A prices on the min + n * step lattice.
double snap_price(const ActionModel& m, double price) {
  const double n = std::round((price - m.price_min) / m.price_step);
  return std::clamp(m.price_min + n * m.price_step, m.price_min, m.price_max);
}

}  // namespace

ActionVariant parse_action_variant(std::string_view name) {
  if (name == "A") return ActionVariant::A;
  if (name == "B") return ActionVariant::B;
  throw ConfigError("unknown action variant '" + std::string(name) + "'");
}

ControlTarget parse_control_target(std::string_view name) {
  if (name == "Price") return ControlTarget::price;
  if (name == "Power") return ControlTarget::power;
  throw ConfigError("unknown control target '" + std::string(name) + "'");
}

UtilityVariant parse_utility_variant(std::string_view name) {
  if (name == "Price") return UtilityVariant::price;
  if (name == "Income") return UtilityVariant::income;
  throw ConfigError("unknown utility variant '" + std::string(name) + "'");
}

Profile parse_profile(std::string_view name) {
  if (name == "ConstantLoading") return Profile::constant_loading;
  if (name == "WorkloadProportional") return Profile::workload_proportional;
  if (name == "Random") return Profile::random;
  if (name == "LinUCB_Disjunct") return Profile::linucb_disjoint;
  if (name == "LinUCB_Hybrid") return Profile::linucb_hybrid;
  if (name == "QLearning") return Profile::q_learning;
  throw ConfigError("unknown strategy profile '" + std::string(name) + "'");
}

std::string_view to_string(ActionVariant v) {
  return v == ActionVariant::A ? "A" : "B";
}
std::string_view to_string(ControlTarget t) {
  return t == ControlTarget::price ? "Price" : "Power";
}
std::string_view to_string(UtilityVariant u) {
  return u == UtilityVariant::price ? "Price" : "Income";
}
std::string_view to_string(Profile p) {
  switch (p) {
    case Profile::constant_loading: return "ConstantLoading";
    case Profile::workload_proportional: return "WorkloadProportional";
    case Profile::random: return "Random";
    case Profile::linucb_disjoint: return "LinUCB_Disjunct";
    case Profile::linucb_hybrid: return "LinUCB_Hybrid";
    case Profile::q_learning: return "QLearning";
  }
  return "ConstantLoading";
}

void ActionModel::validate() const {
  if (variant == ActionVariant::A && target != ControlTarget::price)
    throw ConfigError("action variant A only supports the Price target");
  if (!(price_min > 0.0) || !(price_max >= price_min) ||
      !std::isfinite(price_max))
    throw ConfigError("price bounds must satisfy 0 < min <= max");
  if (variant == ActionVariant::A && !(price_step > 0.0))
    throw ConfigError("price step must be > 0");
}

std::vector<int> valid_actions(const ActionModel& model, double current_price,
                               StepActions done) {
  if (model.variant == ActionVariant::B) return {0, 1, 2, 3, 4};
  std::vector<int> out;
  if (!done.decreased &&
      current_price + model.price_step <= model.price_max + kPriceEps)
    out.push_back(kIncreasePrice);
  if (!done.increased &&
      current_price - model.price_step >= model.price_min - kPriceEps)
    out.push_back(kDecreasePrice);
  out.push_back(kKeepPrice);
  return out;
}

double compute_reward(const LoadWindow& w, const UtilityParams& params) {
  const double load_term = -w.mean_load - w.max_load;
  if (params.variant == UtilityVariant::price)
    return load_term - params.gamma * w.mean_price;
  return load_term + params.gamma * w.income;
}

Context build_context(const ChargingStation& station, const GridState& grid,
                      double soc, std::int64_t t) {
  std::array<double, kContextDimension> x{};
  const auto sub = static_cast<std::size_t>(station.substation);
  x[0] = station.relative_load();
  x[1] = std::clamp(grid.published(sub), 0.0, kLoadingClip);
  const auto& neighbors = grid.substations()[sub].neighbors;
  for (std::size_t i = 0; i < neighbors.size() && i < kMaxNeighbors; ++i) {
    const double l = grid.published(static_cast<std::size_t>(neighbors[i]));
    x[2 + i] = std::clamp(l, 0.0, kLoadingClip) / kLoadingClip;
  }
  const double hours =
      static_cast<double>(t % kSecondsPerDay) / 3600.0;
  const double phase = 2.0 * std::numbers::pi * hours / 24.0;
  x[7] = std::sin(phase);
  x[8] = std::cos(phase);
  x[9] = std::clamp(soc, 0.0, 1.0);
  return Context{ContextVector(std::span<const double>(x)),
                 ContextVector{x[7], x[8], x[9]}};
}

int discretize_state(double loading, std::int64_t t, double soc) {
  const int load_bin =
      std::min(4, static_cast<int>(std::floor(std::max(0.0, loading) / 0.25)));
  const int hour_bin = static_cast<int>((t % kSecondsPerDay) / (4 * 3600));
  const int soc_bin = std::min(
      3, static_cast<int>(std::floor(std::clamp(soc, 0.0, 1.0) / 0.25)));
  return (load_bin * 6 + hour_bin) * 4 + soc_bin;
}

int nearest_level(double fraction) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(kOfferLevels.size()); ++i) {
    if (std::abs(kOfferLevels[i] - fraction) <
        std::abs(kOfferLevels[best] - fraction))
      best = i;
  }
  return best;
}

Agent::Agent(int id, const AgentParams& params, std::uint64_t seed)
    : id_(id),
      params_(params),
      explore_rng_(Rng::stream(seed, "agent-explore",
                               static_cast<std::uint64_t>(id))),
      tie_rng_(Rng::stream(seed, "agent-ties", static_cast<std::uint64_t>(id))) {
  params_.actions.validate();
  const int arms = params_.actions.action_count();
  switch (params_.profile) {
    case Profile::linucb_disjoint:
      linucb_.emplace(LinUcbConfig{params_.alpha, kContextDimension, 0, arms});
      break;
    case Profile::linucb_hybrid:
      linucb_.emplace(
          LinUcbConfig{params_.alpha, kContextDimension, kSharedDimension, arms});
      break;
    case Profile::q_learning:
      params_.q.validate();
      qtable_.emplace(arms, params_.q.initial_value);
      break;
    default:
      break;
  }
}

int Agent::workload_action(double own_loading, double current_price,
                           std::span<const int> valid) const {
  const ActionModel& m = params_.actions;
  if (m.target == ControlTarget::power) {
    return nearest_level(std::clamp(1.0 - own_loading, 0.10, 1.00));
  }
  const double desired =
      m.price_min + (m.price_max - m.price_min) * std::clamp(own_loading, 0.0, 1.0);
  if (m.variant == ActionVariant::B) return nearest_level(desired / m.price_max);
  if (desired > current_price + 0.5 * m.price_step &&
      contains(valid, kIncreasePrice))
    return kIncreasePrice;
  if (desired < current_price - 0.5 * m.price_step &&
      contains(valid, kDecreasePrice))
    return kDecreasePrice;
  return kKeepPrice;
}

int Agent::decide(const Context& ctx, double own_loading, double current_price,
                  std::span<const int> valid, int state, int vehicle,
                  std::int64_t t) {
  require(!valid.empty(), "Agent: empty set of valid actions");
  require(!pending_, "Agent: previous decision not resolved");
  int action = 0;
  switch (params_.profile) {
    case Profile::constant_loading:
      action = params_.actions.variant == ActionVariant::B ? kFullOffer
                                                           : kKeepPrice;
      break;
    case Profile::workload_proportional:
      action = workload_action(own_loading, current_price, valid);
      break;
    case Profile::random:
      action = valid[explore_rng_.below(valid.size())];
      break;
    case Profile::linucb_disjoint:
      action = linucb_->select(ctx.x, nullptr, valid, tie_rng_);
      break;
    case Profile::linucb_hybrid:
      action = linucb_->select(ctx.x, &ctx.z, valid, tie_rng_);
      break;
    case Profile::q_learning:
      action = epsilon_greedy_select(*qtable_, params_.q, state, valid,
                                     explore_rng_);
      break;
  }
  pending_ = PendingDecision{id_, action, ctx, t, state, vehicle};
  ++decisions_;
  return action;
}

void Agent::apply(int action, ChargingStation& station, StepActions& done) const {
  if (params_.profile == Profile::constant_loading) return;
  const ActionModel& m = params_.actions;
  if (m.variant == ActionVariant::B) {
    require(action >= 0 && action < 5, "Agent: variant B action out of range");
    const double level = kOfferLevels[static_cast<std::size_t>(action)];
    if (m.target == ControlTarget::power) {
      station.offered_power_fraction = level;
    } else {
      station.offered_price = level * m.price_max;
    }
    return;
  }
  switch (action) {
    case kIncreasePrice:
      station.offered_price = snap_price(m, station.offered_price + m.price_step);
      done.increased = true;
      break;
    case kDecreasePrice:
      station.offered_price = snap_price(m, station.offered_price - m.price_step);
      done.decreased = true;
      break;
    case kKeepPrice:
      break;
    default:
      throw ContractViolation("Agent: variant A action out of range");
  }
}

const PendingDecision& Agent::pending() const {
  require(pending_.has_value(), "Agent: no pending decision");
  return *pending_;
}

double Agent::resolve(const LoadWindow& window, int next_state) {
  require(pending_.has_value(), "Agent: no pending decision to resolve");
  const double r = compute_reward(window, params_.utility);
  const PendingDecision& p = *pending_;
  if (linucb_) {
    linucb_->update(p.action, p.context.x,
                    linucb_->config().hybrid() ? &p.context.z : nullptr, r);
  } else if (qtable_) {
    q_update(*qtable_, params_.q, p.state, p.action, r, next_state);
  }
  pending_.reset();
  ++resolutions_;
  return r;
}

}  // namespace evcharge
