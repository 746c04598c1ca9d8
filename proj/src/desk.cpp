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

#include "evcharge/desk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "evcharge/error.hpp"
#include "evcharge/rng.hpp"

namespace evcharge {
namespace {

constexpr double kSpacingKm = 2.0;
constexpr double kSpeedKmh = 30.0;
constexpr double kDetour = 1.3;

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

std::int64_t hours(double h) { return static_cast<std::int64_t>(std::llround(h * 3600.0)); }

// Weighted draw over [0, w.size()).
std::size_t pick(Rng& rng, const std::vector<double>& w) {
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  double u = rng.uniform() * total;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (u < w[i]) return i;
    u -= w[i];
  }
  return w.size() - 1;
}

}  // namespace

ScenarioConfig make_desk_scenario(const DeskOptions& o) {
  if (o.substations < 1 || o.stations < o.substations || o.vehicles < 0 ||
      o.days < 1 || o.spaces < 1 || !(o.base_peak > 0.0) || !(o.rated_kw > 0.0))
    throw ConfigError("desk scenario: invalid size parameters");
  if (o.stations < 2 && o.vehicles > 0)
    throw ConfigError("desk scenario: vehicles need at least two areas");

  ScenarioConfig c;
  c.seed = o.seed;
  c.duration_steps = static_cast<std::int64_t>(o.days) * kSecondsPerDay;
  c.agents = o.agents;
  c.behavior = o.behavior;

  const int cols = static_cast<int>(std::ceil(std::sqrt(o.stations * 1.25)));
  for (int i = 0; i < o.stations; ++i) {
    c.areas.push_back({i, (i % cols) * kSpacingKm, (i / cols) * kSpacingKm, {}});
  }
  for (auto& a : c.areas) {
    for (const auto& b : c.areas) {
      if (a.id != b.id && std::hypot(a.x_km - b.x_km, a.y_km - b.y_km) <= o.walking_km)
        a.walking.push_back(b.id);
    }
  }

  // Contiguous blocks of areas per substation.
  std::vector<int> sub_of(static_cast<std::size_t>(o.stations));
  for (int i = 0; i < o.stations; ++i)
    sub_of[static_cast<std::size_t>(i)] = i * o.substations / o.stations;

  std::vector<std::pair<double, double>> centroid(static_cast<std::size_t>(o.substations));
  std::vector<int> members(static_cast<std::size_t>(o.substations), 0);
  for (const auto& a : c.areas) {
    const auto s = static_cast<std::size_t>(sub_of[static_cast<std::size_t>(a.id)]);
    centroid[s].first += a.x_km;
    centroid[s].second += a.y_km;
    ++members[s];
  }
  for (std::size_t s = 0; s < centroid.size(); ++s) {
    centroid[s].first /= members[s];
    centroid[s].second /= members[s];
  }

  for (int s = 0; s < o.substations; ++s) {
    Substation sub;
    sub.id = s;
    sub.rated_power_kw = o.rated_kw;
    sub.type = s == 0 ? GridType::residential : static_cast<GridType>(s % 3);
    // Only grid 0 reaches the calibrated peak; the rest sit 0.01-0.15 lower.
    const double peak = s == 0 ? o.base_peak : o.base_peak - 0.01 - 0.02 * ((s * 5) % 8);
    sub.base = BaseProfile::standard(sub.type, std::max(0.05, peak) * sub.rated_power_kw);

    std::vector<int> others;
    for (int t = 0; t < o.substations; ++t)
      if (t != s) others.push_back(t);
    auto dist = [&](int t) {
      const auto& a = centroid[static_cast<std::size_t>(s)];
      const auto& b = centroid[static_cast<std::size_t>(t)];
      return std::hypot(a.first - b.first, a.second - b.second);
    };
    std::stable_sort(others.begin(), others.end(),
                     [&](int a, int b) { return dist(a) < dist(b); });
    if (others.size() > kMaxNeighbors) others.resize(kMaxNeighbors);
    sub.neighbors = others;
    c.substations.push_back(std::move(sub));
  }

  for (int i = 0; i < o.stations; ++i) {
    ChargingStation st;
    st.id = i;
    st.area = i;
    st.substation = sub_of[static_cast<std::size_t>(i)];
    st.spaces = o.spaces;
    c.stations.push_back(st);
  }

  Rng rng = Rng::stream(o.seed, "desk-tours");
  std::vector<double> home_w;
  for (int i = 0; i < o.stations; ++i)
    home_w.push_back(1.0 / std::pow(i + 1.0, o.home_skew));

  auto trip = [&](int from, int to, std::int64_t depart) {
    const auto& a = c.areas[static_cast<std::size_t>(from)];
    const auto& b = c.areas[static_cast<std::size_t>(to)];
    const double km = kDetour * std::hypot(a.x_km - b.x_km, a.y_km - b.y_km) +
                      uniform(rng, 5.0, 15.0);
    const auto dur = static_cast<std::int64_t>(std::ceil(km / kSpeedKmh * 3600.0));
    return Trip{from, to, depart, km, dur};
  };
  auto other_area = [&](int not_this) {
    int a = static_cast<int>(rng.below(static_cast<std::size_t>(o.stations - 1)));
    return a >= not_this ? a + 1 : a;
  };
  // Next departure no earlier than ten minutes after the previous arrival.
  auto after = [](const Trip& prev, std::int64_t want) {
    return std::max(want, prev.depart + prev.duration_s + 600);
  };

  for (int v = 0; v < o.vehicles; ++v) {
    const int home = static_cast<int>(pick(rng, home_w));
    const int work = other_area(home);
    const double kind = rng.uniform();
    Tour tour;
    tour.vehicle_id = v;
    auto& t = tour.trips;
    t.push_back(trip(home, work, hours(uniform(rng, 7.0, 9.0))));
    if (kind < 0.5) {
      t.push_back(trip(work, home, after(t.back(), hours(uniform(rng, 16.5, 19.0)))));
    } else if (kind < 0.8) {
      const int shop = other_area(work);
      t.push_back(trip(work, shop, after(t.back(), hours(uniform(rng, 16.5, 18.5)))));
      if (shop != home) {
        t.push_back(trip(shop, home, after(t.back(), t.back().depart + t.back().duration_s +
                                                         hours(uniform(rng, 0.5, 1.5)))));
      } else {
        t.back().destination = home;
      }
    } else {
      const int shop = other_area(home);
      t.push_back(trip(work, home, after(t.back(), hours(uniform(rng, 16.5, 18.0)))));
      t.push_back(trip(home, shop, after(t.back(), hours(uniform(rng, 19.0, 20.0)))));
      t.push_back(trip(shop, home, after(t.back(), t.back().depart + t.back().duration_s +
                                                       hours(uniform(rng, 0.5, 1.0)))));
    }
    c.vehicles.push_back({v, kDefaultBatteryKwh, kDefaultConsumptionKwhPerKm, tour});
  }
  c.validate();
  return c;
}

}  // namespace evcharge
