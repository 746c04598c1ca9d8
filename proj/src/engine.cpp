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

#include "evcharge/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "Eigen/Cholesky"
#include "evcharge/error.hpp"

namespace evcharge {
namespace {

bool is_offer_level(double f) {
  return std::find(kOfferLevels.begin(), kOfferLevels.end(), f) !=
         kOfferLevels.end();
}

}  // namespace

Simulation::Simulation(const ScenarioConfig& config, RunOptions options)
    : config_(config),
      options_(options),
      grid_((config.validate(), config.substations)),
      stations_(config.stations),
      area_station_(config.areas.size(), -1),
      windows_(config.stations.size()),
      step_actions_(config.stations.size()),
      charging_kw_(config.substations.size(), 0.0),
      order_rng_(Rng::stream(config.seed, "agent-order")) {
  vehicles_.reserve(config_.vehicles.size());
  for (const auto& spec : config_.vehicles) {
    vehicles_.emplace_back(spec.id, spec.tour, spec.battery_kwh,
                           spec.consumption_kwh_per_km,
                           config_.behavior.price_history);
  }
  agents_.reserve(stations_.size());
  for (auto& s : stations_) {
    s.offered_price = config_.initial_price;
    s.offered_power_fraction = 1.0;
    s.occupied.clear();
    area_station_[static_cast<std::size_t>(s.area)] = s.id;
    agents_.emplace_back(s.id, config_.agents, config_.seed);
  }
  metrics_.profile = std::string(to_string(config_.agents.profile));
  metrics_.seed = config_.seed;
  metrics_.duration_steps = config_.duration_steps;
}

void Simulation::handle_departure(Vehicle& v) {
  if (config_.behavior.diversion == DiversionBehavior::do_not_divert) return;
  const int target = v.area();
  std::vector<StationOffer> offers;
  auto offer_of = [&](int area) {
    const int s = area_station_[static_cast<std::size_t>(area)];
    if (s < 0) return;
    const auto& st = stations_[static_cast<std::size_t>(s)];
    // The intended target is always an option; alternatives only when a
    // space is free.
    if (area != target && !st.has_free_space()) return;
    offers.push_back({st.id, st.area, st.offered_price, st.offered_power_kw()});
  };
  offer_of(target);
  for (int a : config_.areas[static_cast<std::size_t>(target)].walking) offer_of(a);
  const int chosen =
      consider_diversion(v, target, offers, config_.behavior.diversion);
  if (chosen != target) {
    v.divert_to(chosen);
    ++metrics_.diversions;
  }
}

void Simulation::resolve_pending(std::size_t s, double soc) {
  Agent& agent = agents_[s];
  if (!agent.has_pending()) return;
  const auto sub = static_cast<std::size_t>(stations_[s].substation);
  WindowAccumulator& acc = windows_[s];
  if (acc.empty()) {
    // Two decisions of one station in the same second: the window is the
    // instantaneous state.
    const double kw = done() ? 0.0 : charging_kw_[sub];
    acc.add_sample(instantaneous_loading(grid_.substations()[sub], t_, kw));
  }
  const LoadWindow window = acc.finish(t_);
  const std::int64_t decided = agent.pending().time;
  const int next_state = discretize_state(grid_.published(sub), t_, soc);
  const double r = agent.resolve(window, next_state);
  metrics_.rewards.push_back({agent.id(), decided,
                              static_cast<int>(decided / kSecondsPerDay), r});
}

void Simulation::handle_arrival(Vehicle& v) {
  ++metrics_.arrivals;
  const int sid = area_station_[static_cast<std::size_t>(v.area())];
  if (sid < 0) return;
  const auto s = static_cast<std::size_t>(sid);
  ChargingStation& station = stations_[s];
  if (!station.has_free_space()) return;
  ++metrics_.arrivals_with_capacity;

  station.occupy(v.id());
  v.occupy(sid);

  resolve_pending(s, v.soc());

  Agent& agent = agents_[s];
  const auto sub = static_cast<std::size_t>(station.substation);
  const double own = grid_.published(sub);
  const Context ctx = build_context(station, grid_, v.soc(), t_);
  const int state = discretize_state(own, t_, v.soc());
  const auto valid =
      valid_actions(config_.agents.actions, station.offered_price, step_actions_[s]);
  const int action =
      agent.decide(ctx, own, station.offered_price, valid, state, v.id(), t_);
  agent.apply(action, station, step_actions_[s]);
  metrics_.actions.push_back({t_, agent.id(), action});
  ++metrics_.decisions;
  windows_[s].reset(t_);

  if (should_charge(v, station.offered_price, config_.behavior.charging)) {
    v.start_session({next_session_++, sid, station.offered_price,
                     station.offered_power_fraction});
    ++metrics_.sessions;
  }
  v.remember_price(station.offered_price);
}

void Simulation::step() {
  require(!done() && !finished_, "Simulation: run already complete");
  if (t_ % kSyncInterval == 0) grid_.sync_tick(t_);
  std::fill(charging_kw_.begin(), charging_kw_.end(), 0.0);
  std::fill(step_actions_.begin(), step_actions_.end(), StepActions{});
  deliveries_.clear();
  arrivals_.clear();

  for (auto& v : vehicles_) {
    for (const auto& e : v.advance(t_)) {
      if (e.kind == VehicleEvent::Kind::departure) {
        if (e.station >= 0)
          stations_[static_cast<std::size_t>(e.station)].release(v.id());
        handle_departure(v);
      } else {
        arrivals_.push_back(v.id());
      }
    }
    const double e = v.step_energy_kwh();
    if (e > 0.0) {
      const auto& session = *v.session();
      const auto& st = stations_[static_cast<std::size_t>(session.station)];
      charging_kw_[static_cast<std::size_t>(st.substation)] += e * 3600.0;
      deliveries_.push_back({session.station, session.id, session.price, e});
    }
  }

  order_rng_.shuffle(std::span<int>(arrivals_));
  for (int id : arrivals_) handle_arrival(vehicles_[static_cast<std::size_t>(id)]);

  grid_.record_step(t_, charging_kw_);
  for (std::size_t s = 0; s < agents_.size(); ++s) {
    if (!agents_[s].has_pending()) continue;
    windows_[s].add_sample(
        grid_.current(static_cast<std::size_t>(stations_[s].substation)));
  }
  for (const auto& d : deliveries_) {
    const auto s = static_cast<std::size_t>(d.station);
    if (agents_[s].has_pending())
      windows_[s].add_delivery(d.session, d.price, d.energy_kwh);
  }
  if (options_.audit) audit_step();
  ++t_;
}

MetricsRecord Simulation::finish() {
  require(!finished_, "Simulation: finish() called twice");
  for (std::size_t s = 0; s < agents_.size(); ++s) {
    if (!agents_[s].has_pending()) continue;
    const int vid = agents_[s].pending().vehicle;
    resolve_pending(s, vehicles_[static_cast<std::size_t>(vid)].soc());
  }
  finished_ = true;
  if (options_.audit) audit_final();

  for (std::size_t i = 0; i < grid_.size(); ++i) {
    metrics_.substations.push_back(
        {static_cast<int>(i), grid_.substations()[i].rated_power_kw, grid_.series(i)});
  }
  for (const auto& v : vehicles_)
    metrics_.vehicles.push_back({v.id(), v.ledger(), v.energy_kwh()});
  return std::move(metrics_);
}

void Simulation::audit_step() const {
  for (const auto& v : vehicles_) {
    const double soc = v.soc();
    require(soc >= 0.0 && soc <= 1.0,
            "audit: vehicle " + std::to_string(v.id()) + " SoC out of [0,1]");
    if (v.station() >= 0) {
      const auto& occ = stations_[static_cast<std::size_t>(v.station())].occupied;
      require(std::binary_search(occ.begin(), occ.end(), v.id()),
              "audit: vehicle holds a space the station does not list");
    }
    if (v.state() == VehicleState::charging) {
      require(v.session().has_value() && v.session()->station == v.station(),
              "audit: charging vehicle without a matching session");
    }
  }
  for (const auto& s : stations_) {
    require(static_cast<int>(s.occupied.size()) <= s.spaces,
            "audit: station " + std::to_string(s.id) + " over capacity");
    for (int vid : s.occupied) {
      require(vehicles_[static_cast<std::size_t>(vid)].station() == s.id,
              "audit: station lists a vehicle parked elsewhere");
    }
    if (config_.agents.actions.variant == ActionVariant::B) {
      require(is_offer_level(s.offered_power_fraction),
              "audit: power offer outside the variant-B levels");
    }
    const auto& m = config_.agents.actions;
    require(s.offered_price >= m.price_min - 1e-9 &&
                s.offered_price <= m.price_max + 1e-9,
            "audit: price outside its bounds");
  }
}

void Simulation::audit_final() const {
  for (const auto& v : vehicles_) {
    const auto& l = v.ledger();
    const double balance = l.initial_kwh + l.charged_kwh - l.driven_kwh;
    require(std::abs(balance - v.energy_kwh()) <= 1e-9,
            "audit: energy ledger of vehicle " + std::to_string(v.id()) +
                " does not balance");
  }
  for (const auto& a : agents_) {
    require(a.decisions() == a.resolutions() && !a.has_pending(),
            "audit: agent " + std::to_string(a.id()) +
                " has decisions without rewards");
    if (const LinUcb* model = a.linucb()) {
      for (const auto& arm : model->arms()) {
        Eigen::LLT<Eigen::MatrixXd> llt(arm.design);
        require(llt.info() == Eigen::Success, "audit: arm design not SPD");
      }
      if (const SharedState* sh = model->shared()) {
        Eigen::LLT<Eigen::MatrixXd> llt(sh->design);
        require(llt.info() == Eigen::Success, "audit: shared design not SPD");
      }
    }
  }
}

MetricsRecord run(const ScenarioConfig& config, RunOptions options) {
  Simulation sim(config, options);
  while (!sim.done()) sim.step();
  return sim.finish();
}

}  // namespace evcharge
