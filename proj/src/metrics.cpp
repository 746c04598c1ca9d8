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

#include "evcharge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evcharge/error.hpp"
#include "json.hpp"

namespace evcharge {
namespace {

using nlohmann::json;
constexpr int kMetricsVersion = 1;

}  // namespace

int MetricsRecord::day_count() const {
  return static_cast<int>((duration_steps + kSecondsPerDay - 1) / kSecondsPerDay);
}

std::string serialize_metrics(const MetricsRecord& m) {
  json root;
  root["metrics_version"] = kMetricsVersion;
  root["profile"] = m.profile;
  root["seed"] = m.seed;
  root["duration_steps"] = m.duration_steps;
  root["counters"] = {{"arrivals", m.arrivals},
                      {"arrivals_with_capacity", m.arrivals_with_capacity},
                      {"decisions", m.decisions},
                      {"sessions", m.sessions},
                      {"diversions", m.diversions}};
  json subs = json::array();
  for (const auto& s : m.substations) {
    json mean = json::array(), max = json::array();
    for (const auto& w : s.windows) {
      mean.push_back(w.mean);
      max.push_back(w.max);
    }
    subs.push_back({{"id", s.substation},
                    {"rated_power_kw", s.rated_power_kw},
                    {"mean", std::move(mean)},
                    {"max", std::move(max)}});
  }
  root["substations"] = std::move(subs);
  json rewards = json::array();
  for (const auto& r : m.rewards)
    rewards.push_back(json::array({r.agent, r.time, r.day, r.reward}));
  root["rewards"] = std::move(rewards);
  json actions = json::array();
  for (const auto& a : m.actions)
    actions.push_back(json::array({a.time, a.agent, a.action}));
  root["actions"] = std::move(actions);
  json vehicles = json::array();
  for (const auto& v : m.vehicles)
    vehicles.push_back({{"id", v.vehicle},
                        {"initial_kwh", v.ledger.initial_kwh},
                        {"charged_kwh", v.ledger.charged_kwh},
                        {"driven_kwh", v.ledger.driven_kwh},
                        {"unserved_kwh", v.ledger.unserved_kwh},
                        {"stranded_trips", v.ledger.stranded_trips},
                        {"final_kwh", v.final_kwh}});
  root["vehicles"] = std::move(vehicles);
  return root.dump() + "\n";
}

MetricsRecord parse_metrics(std::string_view text) {
  MetricsRecord m;
  try {
    const json root = json::parse(text);
    if (root.at("metrics_version").get<int>() != kMetricsVersion)
      throw ConfigError("metrics: unsupported version");
    m.profile = root.at("profile").get<std::string>();
    m.seed = root.at("seed").get<std::uint64_t>();
    m.duration_steps = root.at("duration_steps").get<std::int64_t>();
    const auto& c = root.at("counters");
    m.arrivals = c.at("arrivals").get<std::int64_t>();
    m.arrivals_with_capacity = c.at("arrivals_with_capacity").get<std::int64_t>();
    m.decisions = c.at("decisions").get<std::int64_t>();
    m.sessions = c.at("sessions").get<std::int64_t>();
    m.diversions = c.at("diversions").get<std::int64_t>();
    for (const auto& s : root.at("substations")) {
      SubstationSeries series;
      series.substation = s.at("id").get<int>();
      series.rated_power_kw = s.at("rated_power_kw").get<double>();
      const auto mean = s.at("mean").get<std::vector<double>>();
      const auto max = s.at("max").get<std::vector<double>>();
      if (mean.size() != max.size())
        throw ConfigError("metrics: mean/max series length mismatch");
      for (std::size_t i = 0; i < mean.size(); ++i)
        series.windows.push_back({mean[i], max[i]});
      m.substations.push_back(std::move(series));
    }
    for (const auto& r : root.at("rewards"))
      m.rewards.push_back({r.at(0).get<int>(), r.at(1).get<std::int64_t>(),
                           r.at(2).get<int>(), r.at(3).get<double>()});
    for (const auto& a : root.at("actions"))
      m.actions.push_back({a.at(0).get<std::int64_t>(), a.at(1).get<int>(),
                           a.at(2).get<int>()});
    for (const auto& v : root.at("vehicles")) {
      VehicleEnergy e;
      e.vehicle = v.at("id").get<int>();
      e.ledger.initial_kwh = v.at("initial_kwh").get<double>();
      e.ledger.charged_kwh = v.at("charged_kwh").get<double>();
      e.ledger.driven_kwh = v.at("driven_kwh").get<double>();
      e.ledger.unserved_kwh = v.at("unserved_kwh").get<double>();
      e.ledger.stranded_trips = v.at("stranded_trips").get<int>();
      e.final_kwh = v.at("final_kwh").get<double>();
      m.vehicles.push_back(e);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("metrics file is malformed: ") + e.what());
  }
  return m;
}

MetricsSummary summarize(const MetricsRecord& m) {
  MetricsSummary s;
  const int days = m.day_count();
  std::vector<double> day_sum(static_cast<std::size_t>(days), 0.0);
  std::vector<std::int64_t> day_count(static_cast<std::size_t>(days), 0);
  for (const auto& sub : m.substations) {
    bool overloaded = false;
    for (std::size_t w = 0; w < sub.windows.size(); ++w) {
      const auto& win = sub.windows[w];
      s.global_max_loading = std::max(s.global_max_loading, win.max);
      if (win.max > 1.0) {
        overloaded = true;
        ++s.overload_windows;
      }
      const auto d = static_cast<std::size_t>(w / kWindowsPerDay);
      day_sum[d] += win.mean;
      ++day_count[d];
    }
    if (overloaded) ++s.overloaded_substations;
  }
  double total = 0.0;
  int used = 0;
  for (int d = 0; d < days; ++d) {
    if (day_count[static_cast<std::size_t>(d)] == 0) continue;
    total += day_sum[static_cast<std::size_t>(d)] /
             static_cast<double>(day_count[static_cast<std::size_t>(d)]);
    ++used;
  }
  s.mean_daily_mean_loading = used ? total / used : 0.0;

  std::vector<double> rsum(static_cast<std::size_t>(days), 0.0);
  std::vector<std::int64_t> rcount(static_cast<std::size_t>(days), 0);
  for (const auto& r : m.rewards) {
    if (r.day < 0 || r.day >= days) continue;
    rsum[static_cast<std::size_t>(r.day)] += r.reward;
    ++rcount[static_cast<std::size_t>(r.day)];
  }
  s.daily_mean_reward.resize(static_cast<std::size_t>(days));
  for (std::size_t d = 0; d < rsum.size(); ++d) {
    s.daily_mean_reward[d] = rcount[d] ? rsum[d] / static_cast<double>(rcount[d])
                                       : std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

}  // namespace evcharge
