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
#include <cmath>
#include <vector>

#include "evcharge/error.hpp"
#include "gtest/gtest.h"

namespace evcharge {
namespace {

Substation flat(int id, double rated, double base_kw, std::vector<int> neighbors = {}) {
  Substation s;
  s.id = id;
  s.rated_power_kw = rated;
  s.base = BaseProfile::constant(base_kw);
  s.neighbors = std::move(neighbors);
  return s;
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

TEST(Context, MidnightEmptyGridFullBattery) {
  GridState g({flat(0, 100, 0)});
  ChargingStation st;
  const auto c = build_context(st, g, 1.0, 0);
  ASSERT_EQ(c.x.size(), kContextDimension);
  const std::vector<double> want = {0, 0, 0, 0, 0, 0, 0, 0, 1, 1};
  for (int i = 0; i < kContextDimension; ++i) EXPECT_NEAR(c.x[i], want[i], 1e-15) << i;
  ASSERT_EQ(c.z.size(), kSharedDimension);
  EXPECT_NEAR(c.z[0], 0.0, 1e-15);
  EXPECT_NEAR(c.z[1], 1.0, 1e-15);
  EXPECT_EQ(c.z[2], 1.0);
}

TEST(Context, SixInTheMorning) {
  GridState g({flat(0, 100, 0)});
  ChargingStation st;
  const auto c = build_context(st, g, 0.5, 6 * 3600 + 2 * 86400);
  EXPECT_NEAR(c.x[7], 1.0, 1e-15);
  EXPECT_NEAR(c.x[8], 0.0, 1e-15);
  EXPECT_EQ(c.x[9], 0.5);
}

TEST(Context, OwnAndNeighborLoadings) {
  // Own grid at 0.775, neighbors at 0.3 and 3.0 (clipped to 1.5).
  GridState g({flat(0, 400, 310, {2, 1}), flat(1, 100, 30), flat(2, 100, 300)});
  ChargingStation st;
  st.spaces = 4;
  st.occupied = {1, 2, 3};
  const auto c = build_context(st, g, 0.3, 0);
  EXPECT_DOUBLE_EQ(c.x[0], 0.75);
  EXPECT_DOUBLE_EQ(c.x[1], 0.775);
  EXPECT_DOUBLE_EQ(c.x[2], 1.0);        // 3.0 clipped to 1.5, over 1.5
  EXPECT_DOUBLE_EQ(c.x[3], 0.3 / 1.5);
  for (int i = 4; i < 7; ++i) EXPECT_EQ(c.x[i], 0.0);
}

TEST(ValidActions, VariantBAlwaysAll) {
  ActionModel m;
  EXPECT_EQ(valid_actions(m, 0.5, {}), (std::vector<int>{0, 1, 2, 3, 4}));
  EXPECT_EQ(valid_actions(m, 0.5, {true, false}), (std::vector<int>{0, 1, 2, 3, 4}));
}

TEST(ValidActions, VariantABounds) {
  ActionModel m;
  m.variant = ActionVariant::A;
  m.target = ControlTarget::price;
  EXPECT_EQ(sorted(valid_actions(m, 0.50, {})), sorted({kKeepPrice, kDecreasePrice}));
  EXPECT_EQ(sorted(valid_actions(m, 0.05, {})), sorted({kKeepPrice, kIncreasePrice}));
  EXPECT_EQ(sorted(valid_actions(m, 0.25, {})),
            sorted({kIncreasePrice, kDecreasePrice, kKeepPrice}));
  // No reversal within one step.
  EXPECT_EQ(sorted(valid_actions(m, 0.25, {true, false})), sorted({kIncreasePrice, kKeepPrice}));
  EXPECT_EQ(sorted(valid_actions(m, 0.25, {false, true})), sorted({kDecreasePrice, kKeepPrice}));
}

TEST(Reward, Examples) {
  EXPECT_EQ(compute_reward({}, {UtilityVariant::price, 0.1}), 0.0);
  EXPECT_EQ(compute_reward({}, {UtilityVariant::income, 0.1}), 0.0);
  LoadWindow w;
  w.mean_load = 0.5;
  w.max_load = 0.8;
  w.mean_price = 0.25;
  w.income = 2.0;
  EXPECT_NEAR(compute_reward(w, {UtilityVariant::price, 0.1}), -1.325, 1e-15);
  EXPECT_NEAR(compute_reward(w, {UtilityVariant::income, 0.1}), -1.1, 1e-15);
}

TEST(Discretize, Bins) {
  EXPECT_EQ(discretize_state(0.0, 0, 0.0), 0);
  EXPECT_EQ(discretize_state(5.0, 86399, 1.0), kStateCount - 1);
  EXPECT_EQ(discretize_state(0.3, 5 * 3600, 0.6), (1 * 6 + 1) * 4 + 2);
  for (double l : {0.0, 0.24, 0.26, 0.99, 1.2})
    for (int h = 0; h < 24; ++h)
      for (double s : {0.0, 0.3, 0.8, 1.0}) {
        const int st = discretize_state(l, h * 3600, s);
        EXPECT_GE(st, 0);
        EXPECT_LT(st, kStateCount);
      }
}

TEST(NearestLevel, TiesGoLow) {
  EXPECT_EQ(nearest_level(1.0), 4);
  EXPECT_EQ(nearest_level(0.1), 0);
  EXPECT_EQ(nearest_level(0.175), 0);  // halfway 0.10 / 0.25
  EXPECT_EQ(nearest_level(0.6), 2);
  EXPECT_EQ(nearest_level(0.7), 3);
}

Context dummy_context() {
  GridState g({flat(0, 100, 0)});
  return build_context(ChargingStation{}, g, 1.0, 0);
}

TEST(Agent, ConstantLoadingOffersFullPowerAndNeverChangesStation) {
  AgentParams p;
  Agent a(0, p, 1);
  const std::vector<int> valid = {0, 1, 2, 3, 4};
  EXPECT_EQ(a.decide(dummy_context(), 0.9, 0.25, valid, 0, 0, 0), kFullOffer);
  ChargingStation st;
  st.offered_power_fraction = 0.5;
  StepActions done;
  a.apply(kFullOffer, st, done);
  EXPECT_EQ(st.offered_power_fraction, 0.5);
}

TEST(Agent, WorkloadProportionalPower) {
  AgentParams p;
  p.profile = Profile::workload_proportional;
  Agent a(0, p, 1);
  const std::vector<int> valid = {0, 1, 2, 3, 4};
  EXPECT_EQ(a.decide(dummy_context(), 0.0, 0.25, valid, 0, 0, 0), 4);
  a.resolve({}, 0);
  EXPECT_EQ(a.decide(dummy_context(), 0.9, 0.25, valid, 0, 0, 0), 0);
  a.resolve({}, 0);
  EXPECT_EQ(a.decide(dummy_context(), 0.5, 0.25, valid, 0, 0, 0), 2);
  ChargingStation st;
  StepActions done;
  a.apply(0, st, done);
  EXPECT_EQ(st.offered_power_fraction, 0.10);
}

TEST(Agent, WorkloadProportionalPriceVariantA) {
  AgentParams p;
  p.profile = Profile::workload_proportional;
  p.actions.variant = ActionVariant::A;
  p.actions.target = ControlTarget::price;
  Agent a(0, p, 1);
  const std::vector<int> all = {0, 1, 2};
  // loading 1.0 wants price_max: step up from 0.25.
  EXPECT_EQ(a.decide(dummy_context(), 1.0, 0.25, all, 0, 0, 0), kIncreasePrice);
  a.resolve({}, 0);
  EXPECT_EQ(a.decide(dummy_context(), 0.0, 0.25, all, 0, 0, 0), kDecreasePrice);
  a.resolve({}, 0);
  // 0.05 + 0.45 * 0.4444 = 0.25: keep.
  EXPECT_EQ(a.decide(dummy_context(), 0.2 / 0.45, 0.25, all, 0, 0, 0), kKeepPrice);
  ChargingStation st;
  StepActions done;
  a.apply(kIncreasePrice, st, done);
  EXPECT_NEAR(st.offered_price, 0.30, 1e-12);
  EXPECT_TRUE(done.increased);
}

TEST(Agent, VariantBPriceTargetUsesLevelTimesMax) {
  AgentParams p;
  p.profile = Profile::random;
  p.actions.target = ControlTarget::price;
  Agent a(0, p, 1);
  ChargingStation st;
  StepActions done;
  a.apply(1, st, done);
  EXPECT_DOUBLE_EQ(st.offered_price, 0.25 * 0.5);
  EXPECT_EQ(st.offered_power_fraction, 1.0);
}

TEST(Agent, PendingLifecycle) {
  AgentParams p;
  p.profile = Profile::random;
  Agent a(3, p, 1);
  EXPECT_FALSE(a.has_pending());
  EXPECT_THROW(a.resolve({}, 0), ContractViolation);
  const std::vector<int> valid = {0, 1, 2, 3, 4};
  const int act = a.decide(dummy_context(), 0.0, 0.25, valid, 0, 9, 42);
  EXPECT_TRUE(a.has_pending());
  EXPECT_EQ(a.pending().action, act);
  EXPECT_EQ(a.pending().time, 42);
  EXPECT_EQ(a.pending().vehicle, 9);
  EXPECT_THROW(a.decide(dummy_context(), 0.0, 0.25, valid, 0, 9, 43), ContractViolation);
  a.resolve({}, 0);
  EXPECT_FALSE(a.has_pending());
  EXPECT_EQ(a.decisions(), 1);
  EXPECT_EQ(a.resolutions(), 1);
}

TEST(Agent, LinUcbResolutionAddsRewardTimesContext) {
  AgentParams p;
  p.profile = Profile::linucb_disjoint;
  p.utility = {UtilityVariant::price, 0.1};
  Agent a(0, p, 1);
  const Context ctx = dummy_context();
  const std::vector<int> valid = {0, 1, 2, 3, 4};
  const int act = a.decide(ctx, 0.0, 0.25, valid, 0, 0, 0);
  LoadWindow w;
  w.mean_load = 0.5;
  w.max_load = 0.8;
  w.mean_price = 0.25;
  EXPECT_NEAR(a.resolve(w, 0), -1.325, 1e-15);
  const auto& arm = a.linucb()->arms()[static_cast<std::size_t>(act)];
  for (int i = 0; i < kContextDimension; ++i)
    EXPECT_NEAR(arm.reward[i], -1.325 * ctx.x[i], 1e-15);
}

TEST(Agent, QLearningUsesNextStateAtResolution) {
  AgentParams p;
  p.profile = Profile::q_learning;
  p.q = {1.0, 0.5, 1e-9, 0.0};
  Agent a(0, p, 1);
  const std::vector<int> valid = {0, 1, 2, 3, 4};
  // Seed state 7 with a value so the bootstrap term is visible.
  a.decide(dummy_context(), 0.0, 0.25, valid, 7, 0, 0);
  LoadWindow w;
  w.income = 10.0;  // reward 1.0 with gamma 0.1
  a.resolve(w, 7);
  const int act = a.decide(dummy_context(), 0.0, 0.25, valid, 3, 0, 1);
  a.resolve({}, 7);
  // r = 0, s' = 7 where max Q = 1.0: Q(3, act) = 0 + 1 * (0 + 0.5 * 1.0 - 0)
  EXPECT_DOUBLE_EQ(a.qtable()->value(3, act), 0.5);
}

TEST(Agent, ActionModelValidation) {
  ActionModel m;
  m.price_min = 0.6;
  EXPECT_THROW(m.validate(), ConfigError);
  m.price_min = 0.05;
  m.variant = ActionVariant::A;  // power target needs variant B
  EXPECT_THROW(m.validate(), ConfigError);
  EXPECT_EQ(parse_profile("LinUCB_Disjunct"), Profile::linucb_disjoint);
  EXPECT_EQ(to_string(Profile::linucb_hybrid), "LinUCB_Hybrid");
  EXPECT_THROW(parse_profile("Greedy"), ConfigError);
}

}  // namespace
}  // namespace evcharge
