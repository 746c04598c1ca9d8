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

#ifndef EVCHARGE_METRICS_HPP_
#define EVCHARGE_METRICS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "evcharge/grid.hpp"
#include "evcharge/mobility.hpp"

namespace evcharge {

struct SubstationSeries {
  int substation = 0;
  double rated_power_kw = 0.0;
  // One entry per 300-second window: mean and max of one-second loadings.
  std::vector<WindowStat> windows;
};

struct RewardRecord {
  int agent = 0;
  std::int64_t time = 0;  // decision time
  int day = 0;            // decision day, 0-based
  double reward = 0.0;
};

// The realized action log: which action each agent took at which step.
struct ActionRecord {
  std::int64_t time = 0;
  int agent = 0;
  int action = 0;
};

struct VehicleEnergy {
  int vehicle = 0;
  EnergyLedger ledger;
  double final_kwh = 0.0;
};

struct MetricsRecord {
  std::string profile;
  std::uint64_t seed = 0;
  std::int64_t duration_steps = 0;
  std::vector<SubstationSeries> substations;
  std::vector<RewardRecord> rewards;
  std::vector<ActionRecord> actions;
  std::vector<VehicleEnergy> vehicles;
  std::int64_t arrivals = 0;
  std::int64_t arrivals_with_capacity = 0;
  std::int64_t decisions = 0;
  std::int64_t sessions = 0;
  std::int64_t diversions = 0;

  int day_count() const;
};

inline constexpr int kWindowsPerDay =
    static_cast<int>(kSecondsPerDay / kSyncInterval);

// JSON text; doubles use the shortest round-trip form, so equal records
// serialize to identical bytes.
std::string serialize_metrics(const MetricsRecord& m);
MetricsRecord parse_metrics(std::string_view text);

struct MetricsSummary {
  double global_max_loading = 0.0;
  // Mean over days of the day's mean loading over all substations/windows.
  double mean_daily_mean_loading = 0.0;
  int overloaded_substations = 0;
  std::int64_t overload_windows = 0;
  // Mean reward per decision day; NaN for days without decisions.
  std::vector<double> daily_mean_reward;
};

MetricsSummary summarize(const MetricsRecord& m);

}  // namespace evcharge

#endif  // EVCHARGE_METRICS_HPP_
