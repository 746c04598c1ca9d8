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

#include "evcharge/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evcharge/error.hpp"
#include "evcharge/grid.hpp"

namespace evcharge {

void Tour::validate() const {
  const std::string who = "tour of vehicle " + std::to_string(vehicle_id) + ": ";
  if (trips.size() < 2 || trips.size() > 4)
    throw ConfigError(who + "needs 2 to 4 trips");
  for (std::size_t i = 0; i < trips.size(); ++i) {
    const Trip& tr = trips[i];
    const Trip& next = trips[(i + 1) % trips.size()];
    if (!(tr.distance_km > 0.0) || !std::isfinite(tr.distance_km))
      throw ConfigError(who + "trip distance must be > 0");
    if (tr.duration_s <= 0) throw ConfigError(who + "trip duration must be > 0");
    if (tr.depart < 0 || tr.depart >= kSecondsPerDay)
      throw ConfigError(who + "departure outside the day");
    if (tr.destination != next.origin)
      throw ConfigError(who + "trips do not form a cycle");
    const std::int64_t next_depart =
        i + 1 < trips.size() ? next.depart : next.depart + kSecondsPerDay;
    if (tr.depart + tr.duration_s >= next_depart)
      throw ConfigError(who + "trip " + std::to_string(i) +
                        " arrives after the next departure");
  }
}

ChargingBehavior parse_charging_behavior(std::string_view name) {
  if (name == "AlwaysLoad") return ChargingBehavior::always_load;
  if (name == "PriceAware") return ChargingBehavior::price_aware;
  if (name == "AlwaysLoadHomeOnly") return ChargingBehavior::always_load_home_only;
  if (name == "PriceAwareHomeOnly") return ChargingBehavior::price_aware_home_only;
  throw ConfigError("unknown charging behavior '" + std::string(name) + "'");
}

DiversionBehavior parse_diversion_behavior(std::string_view name) {
  if (name == "DoNotDivert") return DiversionBehavior::do_not_divert;
  if (name == "DivertToCheapest") return DiversionBehavior::divert_to_cheapest;
  if (name == "DivertToHighestPower")
    return DiversionBehavior::divert_to_highest_power;
  throw ConfigError("unknown diversion behavior '" + std::string(name) + "'");
}

std::string_view to_string(ChargingBehavior b) {
  switch (b) {
    case ChargingBehavior::always_load: return "AlwaysLoad";
    case ChargingBehavior::price_aware: return "PriceAware";
    case ChargingBehavior::always_load_home_only: return "AlwaysLoadHomeOnly";
    case ChargingBehavior::price_aware_home_only: return "PriceAwareHomeOnly";
  }
  return "AlwaysLoad";
}

std::string_view to_string(DiversionBehavior b) {
  switch (b) {
    case DiversionBehavior::do_not_divert: return "DoNotDivert";
    case DiversionBehavior::divert_to_cheapest: return "DivertToCheapest";
    case DiversionBehavior::divert_to_highest_power: return "DivertToHighestPower";
  }
  return "DoNotDivert";
}

PriceHistory::PriceHistory(std::size_t capacity) : capacity_(capacity) {
  require(capacity >= 1, "PriceHistory: capacity must be >= 1");
}

void PriceHistory::push(double price) {
  if (prices_.size() == capacity_) prices_.pop_front();
  prices_.push_back(price);
}

double PriceHistory::fraction_at_most(double price) const {
  if (prices_.empty()) return 1.0;
  const auto n = std::count_if(prices_.begin(), prices_.end(),
                               [price](double c) { return c <= price; });
  return static_cast<double>(n) / static_cast<double>(prices_.size());
}

Vehicle::Vehicle(int id, Tour tour, double capacity_kwh,
                 double consumption_kwh_per_km, std::size_t history_capacity)
    : id_(id),
      tour_(std::move(tour)),
      capacity_(capacity_kwh),
      consumption_(consumption_kwh_per_km),
      energy_(capacity_kwh),
      history_(history_capacity),
      area_(0) {
  tour_.validate();
  if (!(capacity_ > 0.0)) throw ConfigError("vehicle battery capacity must be > 0");
  if (!(consumption_ > 0.0)) throw ConfigError("vehicle consumption must be > 0");
  area_ = tour_.trips.front().origin;
  next_depart_ = tour_.trips.front().depart;
  ledger_.initial_kwh = energy_;
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

void Vehicle::book(double charged, double driven) {
  if (charged != 0.0) charged_.add(charged);
  if (driven != 0.0) driven_.add(driven);
  ledger_.charged_kwh = charged_.value();
  ledger_.driven_kwh = driven_.value();
  energy_ = std::clamp(ledger_.initial_kwh + ledger_.charged_kwh - ledger_.driven_kwh,
                       0.0, capacity_);
}

int Vehicle::trip_target() const {
  return tour_.trips[trip_index_].destination;
}

std::vector<VehicleEvent> Vehicle::advance(std::int64_t t) {
  std::vector<VehicleEvent> events;
  step_energy_ = 0.0;

  if (state_ != VehicleState::driving && t == next_depart_) {
    const Trip& trip = tour_.trips[trip_index_];
    events.push_back({VehicleEvent::Kind::departure, id_, area_, station_, t});
    station_ = -1;
    session_.reset();
    state_ = VehicleState::driving;
    area_ = trip.destination;
    arrive_at_ = t + trip.duration_s;
    trip_energy_ = trip.distance_km * consumption_;
    trip_drawn_ = 0.0;
    trip_stranded_ = false;
  }

  if (state_ == VehicleState::driving) {
    if (t == arrive_at_) {
      state_ = VehicleState::parked;
      events.push_back({VehicleEvent::Kind::arrival, id_, area_, -1, t});
      if (++trip_index_ == tour_.trips.size()) {
        trip_index_ = 0;
        cycle_start_ += kSecondsPerDay;
      }
      next_depart_ = cycle_start_ + tour_.trips[trip_index_].depart;
    } else {
      const Trip& trip = tour_.trips[trip_index_];
      // The last driving second takes whatever is left, so a trip draws
      // exactly distance * consumption.
      const double need =
          t + 1 == arrive_at_
              ? trip_energy_ - trip_drawn_
              : trip_energy_ / static_cast<double>(trip.duration_s);
      trip_drawn_ += need;
      double draw = need;
      if (need >= energy_) {
        draw = energy_;
        if (need > draw) {
          ledger_.unserved_kwh += need - draw;
          if (!trip_stranded_) {
            trip_stranded_ = true;
            ++ledger_.stranded_trips;
          }
        }
      }
      book(0.0, draw);
    }
    return events;
  }

  if (state_ == VehicleState::charging) {
    const double kw = session_->power_fraction * kMaxPowerPerSpaceKw;
    const double room = capacity_ - energy_;
    const double e = std::max(0.0, std::min(kw / 3600.0, room));
    book(e, 0.0);
    step_energy_ = e;
  }
  return events;
}

void Vehicle::divert_to(int area) {
  require(state_ == VehicleState::driving, "divert_to: vehicle is not driving");
  area_ = area;
}

void Vehicle::occupy(int station) {
  require(state_ == VehicleState::parked && station_ < 0,
          "occupy: vehicle is not parked without a space");
  station_ = station;
}

void Vehicle::start_session(const ChargingSession& session) {
  require(state_ == VehicleState::parked && station_ == session.station,
          "start_session: vehicle does not hold a space at this station");
  require(session.power_fraction > 0.0 && session.power_fraction <= 1.0,
          "start_session: power fraction outside (0,1]");
  session_ = session;
  state_ = VehicleState::charging;
}

std::vector<VehicleEvent> advance_vehicle(Vehicle& v, std::int64_t t,
                                          std::int64_t dt) {
  require(dt == 1, "advance_vehicle: only one-second steps are supported");
  return v.advance(t);
}

bool should_charge(const Vehicle& v, double offered_price,
                   ChargingBehavior behavior) {
  const double soc = v.soc();
  if (soc < kEmergencySoc) return true;
  const bool home_only = behavior == ChargingBehavior::always_load_home_only ||
                         behavior == ChargingBehavior::price_aware_home_only;
  if (home_only && v.area() != v.home_area()) return false;
  switch (behavior) {
    case ChargingBehavior::always_load:
    case ChargingBehavior::always_load_home_only:
      return true;
    case ChargingBehavior::price_aware:
    case ChargingBehavior::price_aware_home_only:
      return soc <= v.history().fraction_at_most(offered_price);
  }
  return true;
}

int consider_diversion(const Vehicle& /*v*/, int target,
                       std::span<const StationOffer> alternatives,
                       DiversionBehavior behavior) {
  if (behavior == DiversionBehavior::do_not_divert || alternatives.empty())
    return target;
  const bool cheapest = behavior == DiversionBehavior::divert_to_cheapest;
  auto better = [cheapest](const StationOffer& a, const StationOffer& b) {
    return cheapest ? a.price < b.price : a.power_kw > b.power_kw;
  };
  const StationOffer* best = nullptr;
  for (const auto& o : alternatives) {
    if (best == nullptr || better(o, *best)) {
      best = &o;
    } else if (!better(*best, o)) {
      // Tie: target first, then lowest station id.
      const bool o_target = o.area == target;
      const bool b_target = best->area == target;
      if ((o_target && !b_target) ||
          (o_target == b_target && o.station < best->station))
        best = &o;
    }
  }
  return best->area;
}

void ChargingStation::occupy(int vehicle) {
  require(has_free_space(), "ChargingStation: no free space");
  auto it = std::lower_bound(occupied.begin(), occupied.end(), vehicle);
  require(it == occupied.end() || *it != vehicle,
          "ChargingStation: vehicle already parked here");
  occupied.insert(it, vehicle);
}

void ChargingStation::release(int vehicle) {
  auto it = std::lower_bound(occupied.begin(), occupied.end(), vehicle);
  require(it != occupied.end() && *it == vehicle,
          "ChargingStation: vehicle not parked here");
  occupied.erase(it);
}

}  // namespace evcharge
