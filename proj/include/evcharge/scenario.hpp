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

#ifndef EVCHARGE_SCENARIO_HPP_
#define EVCHARGE_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "evcharge/agents.hpp"
#include "evcharge/grid.hpp"
#include "evcharge/mobility.hpp"

namespace evcharge {

inline constexpr int kScenarioSchemaVersion = 1;
// Ten simulated days at one-second steps.
inline constexpr std::int64_t kDefaultDurationSteps = 864000;
inline constexpr double kInitialPrice = 0.25;

struct Area {
  int id = 0;
  double x_km = 0.0;
  double y_km = 0.0;
  std::vector<int> walking;  // areas within walking range
};

struct VehicleSpec {
  int id = 0;
  double battery_kwh = kDefaultBatteryKwh;
  double consumption_kwh_per_km = kDefaultConsumptionKwhPerKm;
  Tour tour;
};

struct VehicleBehavior {
  ChargingBehavior charging = ChargingBehavior::always_load;
  DiversionBehavior diversion = DiversionBehavior::do_not_divert;
  std::size_t price_history = kPriceHistoryCapacity;
};

// Everything needed for one deterministic run. Ids of substations, areas,
// stations and vehicles equal their position in the respective list.
struct ScenarioConfig {
  std::int64_t duration_steps = kDefaultDurationSteps;
  std::uint64_t seed = 1;
  double initial_price = kInitialPrice;
  std::vector<Substation> substations;
  std::vector<Area> areas;
  std::vector<ChargingStation> stations;
  std::vector<VehicleSpec> vehicles;
  AgentParams agents;
  VehicleBehavior behavior;

  // Throws ConfigError describing the first problem found.
  void validate() const;
};

// JSON scenario document, schema_version 1. Unknown keys are errors.
// Relative tour_source.file paths resolve against base_dir.
ScenarioConfig parse_scenario(std::string_view json_text,
                              const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario(const std::filesystem::path& path);
// Canonical JSON form; parse_scenario(scenario_to_json(c)) reproduces c.
std::string scenario_to_json(const ScenarioConfig& config);

// Applies `value_json` (a JSON literal) at a dotted key such as
// "agents.profile" or "seed", then re-validates.
ScenarioConfig with_parameter(const ScenarioConfig& config, std::string_view key,
                              std::string_view value_json);

}  // namespace evcharge

#endif  // EVCHARGE_SCENARIO_HPP_
