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

#include "evcharge/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <string>

#include "evcharge/desk.hpp"
#include "evcharge/error.hpp"
#include "gtest/gtest.h"

namespace evcharge {
namespace {

const char* kTiny = R"({
  "schema_version": 1,
  "duration_steps": 3600,
  "seed": 9,
  "substations": [
    {"id": 0, "rated_power_kw": 400, "grid_type": "residential",
     "neighbors": [1], "base_peak_loading": 0.5},
    {"id": 1, "rated_power_kw": 250, "base_profile_kw": [[0, 50], [43200, 100]]}
  ],
  "areas": [{"id": 0, "x_km": 0, "y_km": 0, "walking": [1]},
            {"id": 1, "x_km": 1, "y_km": 0}],
  "stations": [{"id": 0, "area": 0, "substation": 0, "spaces": 2},
               {"id": 1, "area": 1, "substation": 1, "spaces": 1}],
  "vehicles": [{"id": 0, "trips": [
      {"origin": 0, "destination": 1, "depart": 600, "distance_km": 5, "duration_s": 600},
      {"origin": 1, "destination": 0, "depart": 3000, "distance_km": 5, "duration_s": 300}]}],
  "agents": {"profile": "QLearning", "q_epsilon": 0.2},
  "vehicle_behavior": {"charging": "PriceAware", "diversion": "DivertToCheapest"}
})";

std::string with(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  return text.replace(at, from.size(), to);
}

TEST(Scenario, ParsesEverySection) {
  const auto c = parse_scenario(kTiny);
  EXPECT_EQ(c.duration_steps, 3600);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.initial_price, 0.25);
  ASSERT_EQ(c.substations.size(), 2u);
  EXPECT_DOUBLE_EQ(c.substations[0].base.peak(), 200.0);
  EXPECT_EQ(c.substations[0].neighbors, std::vector<int>{1});
  EXPECT_DOUBLE_EQ(c.substations[1].base.at(21600), 75.0);
  EXPECT_EQ(c.areas[0].walking, std::vector<int>{1});
  EXPECT_EQ(c.stations[0].spaces, 2);
  ASSERT_EQ(c.vehicles.size(), 1u);
  EXPECT_EQ(c.vehicles[0].battery_kwh, 22.0);
  EXPECT_EQ(c.vehicles[0].tour.trips[1].depart, 3000);
  EXPECT_EQ(c.agents.profile, Profile::q_learning);
  EXPECT_EQ(c.agents.q.epsilon, 0.2);
  EXPECT_EQ(c.behavior.charging, ChargingBehavior::price_aware);
  EXPECT_EQ(c.behavior.diversion, DiversionBehavior::divert_to_cheapest);
}

TEST(Scenario, DefaultsWhenOmitted) {
  const std::string minimal = R"({"schema_version": 1,
    "substations": [{"id": 0, "rated_power_kw": 100, "base_peak_loading": 0.3}],
    "areas": [{"id": 0}], "stations": [{"id": 0, "area": 0, "substation": 0, "spaces": 1}]})";
  const auto c = parse_scenario(minimal);
  EXPECT_EQ(c.duration_steps, 864000);
  EXPECT_EQ(c.initial_price, 0.25);
  EXPECT_EQ(c.agents.profile, Profile::constant_loading);
  EXPECT_EQ(c.behavior.charging, ChargingBehavior::always_load);
}

TEST(Scenario, UnknownKeysAreErrors) {
  EXPECT_THROW(parse_scenario(with(kTiny, "\"seed\": 9", "\"seed\": 9, \"sede\": 1")), ConfigError);
  EXPECT_THROW(parse_scenario(with(kTiny, "\"q_epsilon\"", "\"q_epsilom\"")), ConfigError);
  EXPECT_THROW(parse_scenario(with(kTiny, "\"spaces\": 1}", "\"spaces\": 1, \"x\": 0}")),
               ConfigError);
}

TEST(Scenario, ValidationErrors) {
  EXPECT_THROW(parse_scenario(with(kTiny, "\"schema_version\": 1", "\"schema_version\": 2")),
               ConfigError);
  EXPECT_THROW(parse_scenario(with(kTiny, "\"duration_steps\": 3600", "\"duration_steps\": 0")),
               ConfigError);
  EXPECT_THROW(parse_scenario(with(kTiny, "\"area\": 1, \"substation\": 1",
                                   "\"area\": 1, \"substation\": 5")),
               ConfigError);
  EXPECT_THROW(parse_scenario(with(kTiny, "\"area\": 1, \"substation\": 1",
                                   "\"area\": 0, \"substation\": 1")),
               ConfigError);
  EXPECT_THROW(parse_scenario(with(kTiny, "\"destination\": 1, \"depart\": 600",
                                   "\"destination\": 7, \"depart\": 600")),
               ConfigError);
  EXPECT_THROW(parse_scenario(with(kTiny, "\"profile\": \"QLearning\"",
                                   "\"profile\": \"Oracle\"")),
               ConfigError);
  EXPECT_THROW(parse_scenario(with(kTiny, "\"base_peak_loading\": 0.5",
                                   "\"base_peak_loading\": 0.5, \"base_profile_kw\": [[0,1]]")),
               ConfigError);
  EXPECT_THROW(parse_scenario("{not json"), ConfigError);
}

TEST(Scenario, JsonRoundTripIsStable) {
  const auto c = parse_scenario(kTiny);
  const std::string once = scenario_to_json(c);
  const std::string twice = scenario_to_json(parse_scenario(once));
  EXPECT_EQ(once, twice);
}

TEST(Scenario, WithParameter) {
  const auto c = parse_scenario(kTiny);
  const auto d = with_parameter(c, "agents.profile", "\"LinUCB_Hybrid\"");
  EXPECT_EQ(d.agents.profile, Profile::linucb_hybrid);
  EXPECT_EQ(c.agents.profile, Profile::q_learning);
  EXPECT_EQ(with_parameter(c, "seed", "77").seed, 77u);
  EXPECT_THROW(with_parameter(c, "agents.colour", "1"), ConfigError);
  EXPECT_THROW(with_parameter(c, "seed", "seventy"), ConfigError);
  EXPECT_THROW(with_parameter(c, "agents.alpha", "-1"), ConfigError);
}

TEST(Scenario, TourSourceBuildsVehicles) {
  const auto dir = std::filesystem::temp_directory_path() / "evcharge_scenario_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "tours.csv");
    out << "# evcharge-tours v1\n"
           "tour,seq,trip_id,from_edge,to_edge,depart\n"
           "0,0,a,e0,e1,28800\n"
           "0,1,b,e1,e0,61200\n";
  }
  const std::string text = with(kTiny, "\"vehicles\": [",
                                "\"tour_source\": {\"file\": \"tours.csv\", "
                                "\"edge_areas\": {\"e0\": 0, \"e1\": 1}}, \"vehicles\": [");
  const auto c = parse_scenario(text, dir);
  ASSERT_EQ(c.vehicles.size(), 2u);
  const auto& t = c.vehicles[1].tour.trips;
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].origin, 0);
  EXPECT_EQ(t[0].destination, 1);
  EXPECT_DOUBLE_EQ(t[0].distance_km, 1.3);
  EXPECT_EQ(t[0].duration_s, 156);  // ceil(1.3 km / 30 km/h)
  EXPECT_THROW(parse_scenario(text, dir / "missing"), IoError);
  std::filesystem::remove_all(dir);
}

TEST(Desk, ShapeAndCalibration) {
  const auto c = make_desk_scenario({});
  EXPECT_EQ(c.substations.size(), 8u);
  EXPECT_EQ(c.stations.size(), 20u);
  EXPECT_EQ(c.vehicles.size(), 200u);
  EXPECT_EQ(c.duration_steps, 864000);
  double peak = 0.0;
  for (const auto& s : c.substations) {
    peak = std::max(peak, s.base.peak() / s.rated_power_kw);
    EXPECT_LE(s.neighbors.size(), 5u);
  }
  EXPECT_DOUBLE_EQ(peak, 0.55);
  // Same options, same city.
  EXPECT_EQ(scenario_to_json(c), scenario_to_json(make_desk_scenario({})));
  DeskOptions other;
  other.seed = 2;
  EXPECT_NE(scenario_to_json(c), scenario_to_json(make_desk_scenario(other)));
}

}  // namespace
}  // namespace evcharge
