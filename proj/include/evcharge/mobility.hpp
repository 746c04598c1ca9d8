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

#ifndef EVCHARGE_MOBILITY_HPP_
#define EVCHARGE_MOBILITY_HPP_

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace evcharge {

inline constexpr double kDefaultBatteryKwh = 22.0;
// Average range measured for the reference vehicle's energy model.
inline constexpr double kVerifiedRangeKm = 104.0;
inline constexpr double kDefaultConsumptionKwhPerKm =
    kDefaultBatteryKwh / kVerifiedRangeKm;
inline constexpr double kMaxPowerPerSpaceKw = 11.0;
// Below this state of charge a vehicle always charges.
inline constexpr double kEmergencySoc = 0.20;
inline constexpr std::size_t kPriceHistoryCapacity = 20;
// Offer levels of the absolute action model, fraction of the maximum.
inline constexpr std::array<double, 5> kOfferLevels = {0.10, 0.25, 0.50, 0.75,
                                                       1.00};

struct Trip {
  int origin = 0;
  int destination = 0;
  std::int64_t depart = 0;  // seconds of day
  double distance_km = 0.0;
  std::int64_t duration_s = 0;
};

// Daily cycle of 2-4 trips; repeated every simulated day.
struct Tour {
  int vehicle_id = 0;
  std::vector<Trip> trips;

  // Throws ConfigError unless the trips form a closed, time-ordered,
  // non-overlapping daily cycle.
  void validate() const;
};

enum class VehicleState { parked, driving, charging };

enum class ChargingBehavior {
  always_load,
  price_aware,
  always_load_home_only,
  price_aware_home_only,
};

enum class DiversionBehavior {
  do_not_divert,
  divert_to_cheapest,
  divert_to_highest_power,
};

ChargingBehavior parse_charging_behavior(std::string_view name);
DiversionBehavior parse_diversion_behavior(std::string_view name);
std::string_view to_string(ChargingBehavior b);
std::string_view to_string(DiversionBehavior b);

// Bounded FIFO of the most recently seen charging prices.
class PriceHistory {
 public:
  explicit PriceHistory(std::size_t capacity = kPriceHistoryCapacity);

  void push(double price);
  bool empty() const { return prices_.empty(); }
  std::size_t size() const { return prices_.size(); }
  std::size_t capacity() const { return capacity_; }
  // |{c in C : c <= price}| / |C|; 1.0 for an empty history.
  double fraction_at_most(double price) const;

 private:
  std::size_t capacity_;
  std::deque<double> prices_;
};

// Offer contracted when a session starts; later changes by the station do
// not affect it.
struct ChargingSession {
  std::int64_t id = 0;
  int station = -1;
  double price = 0.0;
  double power_fraction = 1.0;
};

struct EnergyLedger {
  double initial_kwh = 0.0;
  double charged_kwh = 0.0;
  double driven_kwh = 0.0;    // energy actually drawn from the battery
  double unserved_kwh = 0.0;  // trip demand the empty battery could not cover
  int stranded_trips = 0;
};

struct VehicleEvent {
  enum class Kind { departure, arrival };
  Kind kind = Kind::arrival;
  int vehicle = 0;
  int area = 0;
  // Departure: station whose space was released, or -1.
  int station = -1;
  std::int64_t time = 0;
};

// Neumaier-compensated running sum; keeps long ledgers exact to a few ulps.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class Vehicle {
 public:
  Vehicle(int id, Tour tour, double capacity_kwh = kDefaultBatteryKwh,
          double consumption_kwh_per_km = kDefaultConsumptionKwhPerKm,
          std::size_t history_capacity = kPriceHistoryCapacity);

  int id() const { return id_; }
  const Tour& tour() const { return tour_; }
  double capacity_kwh() const { return capacity_; }
  double consumption_kwh_per_km() const { return consumption_; }
  double energy_kwh() const { return energy_; }
  double soc() const { return energy_ / capacity_; }
  VehicleState state() const { return state_; }
  // Current area when parked, destination while driving.
  int area() const { return area_; }
  int home_area() const { return tour_.trips.front().origin; }
  int station() const { return station_; }
  const std::optional<ChargingSession>& session() const { return session_; }
  const PriceHistory& history() const { return history_; }
  const EnergyLedger& ledger() const { return ledger_; }
  std::int64_t next_departure() const { return next_depart_; }
  // Energy added to the battery during the last advance() call.
  double step_energy_kwh() const { return step_energy_; }
  // Intended destination of the trip being driven.
  int trip_target() const;

  // One-second step: departure, driving consumption, arrival, charging.
  std::vector<VehicleEvent> advance(std::int64_t t);

  // Engine hooks.
  void divert_to(int area);
  void occupy(int station);
  void start_session(const ChargingSession& session);
  void remember_price(double price) { history_.push(price); }

 private:
  int id_;
  Tour tour_;
  double capacity_;
  double consumption_;
  double energy_;
  PriceHistory history_;
  EnergyLedger ledger_;
  CompensatedSum charged_;
  CompensatedSum driven_;
  VehicleState state_ = VehicleState::parked;
  int area_;
  int station_ = -1;
  std::optional<ChargingSession> session_;
  std::size_t trip_index_ = 0;
  std::int64_t cycle_start_ = 0;
  std::int64_t next_depart_ = 0;
  std::int64_t arrive_at_ = 0;
  double trip_energy_ = 0.0;
  double trip_drawn_ = 0.0;
  bool trip_stranded_ = false;
  double step_energy_ = 0.0;

  // Battery level follows from the ledger, so it always balances.
  void book(double charged, double driven);
};

// Free-function form of Vehicle::advance; only one-second steps are supported.
std::vector<VehicleEvent> advance_vehicle(Vehicle& v, std::int64_t t,
                                          std::int64_t dt = 1);

// Charging decision of a vehicle that just took a free space.
//   emergency: soc < 20% always charges
//   home-only variants refuse away from the tour's home area
//   AlwaysLoad charges; PriceAware charges iff
//     soc <= |{c in C : c <= offered_price}| / |C|   (empty C charges)
bool should_charge(const Vehicle& v, double offered_price,
                   ChargingBehavior behavior);

struct StationOffer {
  int station = 0;
  int area = 0;
  double price = 0.0;
  double power_kw = 0.0;
};

// Target area after looking at the offers in walking range of `target`.
// Ties keep the original target, then prefer the lowest station id.
int consider_diversion(const Vehicle& v, int target,
                       std::span<const StationOffer> alternatives,
                       DiversionBehavior behavior);

struct ChargingStation {
  int id = 0;
  int area = 0;
  int substation = 0;
  int spaces = 1;
  double max_power_per_space_kw = kMaxPowerPerSpaceKw;
  double offered_price = 0.25;
  double offered_power_fraction = 1.0;
  std::vector<int> occupied;  // vehicle ids, ascending

  bool has_free_space() const {
    return static_cast<int>(occupied.size()) < spaces;
  }
  double relative_load() const {
    return static_cast<double>(occupied.size()) / spaces;
  }
  double offered_power_kw() const {
    return offered_power_fraction * max_power_per_space_kw;
  }
  void occupy(int vehicle);
  void release(int vehicle);
};

}  // namespace evcharge

#endif  // EVCHARGE_MOBILITY_HPP_
