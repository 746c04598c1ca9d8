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

#include <cmath>

#include "evcharge/desk.hpp"
#include "evcharge/error.hpp"
#include "evcharge/metrics.hpp"
#include "gtest/gtest.h"

namespace evcharge {
namespace {

// One flat 100 kW grid with no base load, home (area 0, no station) and
// work (area 1, station 0). One commuter, 10.4 km each way.
ScenarioConfig commuter(std::int64_t duration = 86400) {
  ScenarioConfig c;
  c.duration_steps = duration;
  Substation s;
  s.rated_power_kw = 100.0;
  s.base = BaseProfile::constant(0.0);
  c.substations = {s};
  c.areas = {{0, 0, 0, {}}, {1, 5, 0, {}}};
  ChargingStation st;
  st.area = 1;
  st.spaces = 1;
  c.stations = {st};
  VehicleSpec v;
  v.tour.trips = {{0, 1, 8 * 3600, 10.4, 900}, {1, 0, 17 * 3600, 10.4, 900}};
  c.vehicles = {v};
  return c;
}

TEST(Engine, OneStepWithoutVehicles) {
  auto c = commuter(1);
  c.vehicles.clear();
  const auto m = run(c);
  ASSERT_EQ(m.substations.size(), 1u);
  ASSERT_EQ(m.substations[0].windows.size(), 1u);
  EXPECT_EQ(m.substations[0].windows[0].max, 0.0);
  EXPECT_TRUE(m.rewards.empty());
  EXPECT_EQ(m.decisions, 0);
  EXPECT_EQ(m.day_count(), 1);
}

TEST(Engine, BaseCasePeaksAtCalibratedValue) {
  DeskOptions o;
  o.vehicles = 0;
  o.days = 1;
  const auto s = summarize(run(make_desk_scenario(o)));
  EXPECT_NEAR(s.global_max_loading, 0.55, 0.02);
  EXPECT_EQ(s.overloaded_substations, 0);
}

TEST(Engine, CommuterChargesWhatItDroveAndGridSeesIt) {
  const auto m = run(commuter(), {true});
  ASSERT_EQ(m.vehicles.size(), 1u);
  const auto& l = m.vehicles[0].ledger;
  // Only the morning trip has been recharged (no station at home).
  EXPECT_NEAR(l.driven_kwh, 2 * 10.4 * 22.0 / 104.0, 1e-9);
  EXPECT_NEAR(l.charged_kwh, 10.4 * 22.0 / 104.0, 1e-9);
  EXPECT_NEAR(m.vehicles[0].final_kwh, 22.0 - 2.2, 1e-9);
  // Integrate the grid: sum(mean * 300 s) * 100 kW / 3600 = delivered kWh.
  double kwh = 0.0;
  double peak = 0.0;
  for (const auto& w : m.substations[0].windows) {
    kwh += w.mean * 300.0 * 100.0 / 3600.0;
    peak = std::max(peak, w.max);
  }
  EXPECT_NEAR(kwh, l.charged_kwh, 1e-9);
  EXPECT_DOUBLE_EQ(peak, 0.11);
  EXPECT_EQ(m.arrivals, 2);
  EXPECT_EQ(m.arrivals_with_capacity, 1);
  EXPECT_EQ(m.decisions, 1);
  EXPECT_EQ(m.sessions, 1);
}

TEST(Engine, PendingDecisionIsFlushedAtTheEnd) {
  const auto m = run(commuter());
  ASSERT_EQ(m.rewards.size(), 1u);
  EXPECT_EQ(m.rewards[0].time, 8 * 3600 + 900);
  EXPECT_EQ(m.rewards[0].day, 0);
  // Income utility over the rest of the day: -mean - max + 0.1 * 0.25 * 2.2.
  EXPECT_LT(m.rewards[0].reward, 0.0);
  EXPECT_GT(m.rewards[0].reward, -0.11 - 0.11);
}

TEST(Engine, SecondArrivalResolvesThePreviousDecision) {
  auto c = commuter(2 * 86400);
  const auto m = run(c, {true});
  ASSERT_EQ(m.rewards.size(), 2u);
  EXPECT_EQ(m.rewards[0].day, 0);
  EXPECT_EQ(m.rewards[1].day, 1);
  EXPECT_EQ(m.rewards[1].time, 86400 + 8 * 3600 + 900);
}

TEST(Engine, DeterministicAcrossRuns) {
  DeskOptions o;
  o.vehicles = 60;
  o.days = 2;
  o.agents.profile = Profile::linucb_hybrid;
  o.behavior.diversion = DiversionBehavior::divert_to_highest_power;
  const auto c = make_desk_scenario(o);
  EXPECT_EQ(serialize_metrics(run(c)), serialize_metrics(run(c)));
  auto d = c;
  d.seed = 99;
  EXPECT_NE(serialize_metrics(run(c)), serialize_metrics(run(d)));
}

TEST(Engine, DecisionsMatchArrivalsWithSpace) {
  for (auto profile : {Profile::constant_loading, Profile::workload_proportional,
                       Profile::random, Profile::linucb_disjoint, Profile::linucb_hybrid,
                       Profile::q_learning}) {
    DeskOptions o;
    o.vehicles = 120;
    o.spaces = 3;  // force some full stations
    o.days = 1;
    o.agents.profile = profile;
    const auto m = run(make_desk_scenario(o), {true});
    EXPECT_EQ(m.decisions, m.arrivals_with_capacity) << to_string(profile);
    EXPECT_LT(m.arrivals_with_capacity, m.arrivals) << to_string(profile);
    EXPECT_EQ(static_cast<std::int64_t>(m.rewards.size()), m.decisions);
    EXPECT_EQ(static_cast<std::int64_t>(m.actions.size()), m.decisions);
  }
}

TEST(Engine, VariantAPriceProfilesStayInBounds) {
  DeskOptions o;
  o.vehicles = 80;
  o.days = 1;
  o.agents.profile = Profile::q_learning;
  o.agents.actions.variant = ActionVariant::A;
  o.agents.actions.target = ControlTarget::price;
  o.agents.utility.variant = UtilityVariant::price;
  o.behavior.charging = ChargingBehavior::price_aware;
  o.behavior.diversion = DiversionBehavior::divert_to_cheapest;
  const auto m = run(make_desk_scenario(o), {true});
  EXPECT_GT(m.decisions, 0);
  for (const auto& a : m.actions) EXPECT_TRUE(a.action >= 0 && a.action <= 2);
}

TEST(Engine, InvalidConfigFailsBeforeRunning) {
  auto c = commuter();
  c.stations[0].substation = 3;
  EXPECT_THROW(Simulation{c}, ConfigError);
  c = commuter();
  c.duration_steps = 0;
  EXPECT_THROW(run(c), ConfigError);
}

TEST(Engine, StepApi) {
  Simulation sim(commuter(600));
  while (!sim.done()) sim.step();
  EXPECT_EQ(sim.time(), 600);
  EXPECT_THROW(sim.step(), ContractViolation);
  const auto m = sim.finish();
  EXPECT_EQ(m.substations[0].windows.size(), 2u);
  EXPECT_THROW(sim.finish(), ContractViolation);
}

}  // namespace
}  // namespace evcharge
