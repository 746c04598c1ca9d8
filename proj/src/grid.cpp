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

#include "evcharge/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evcharge/error.hpp"

namespace evcharge {
namespace {

using Knots = std::vector<std::pair<double, double>>;

// Relative shapes, (hour, fraction of daily peak).
const Knots kResidential = {{0, 0.50},  {3, 0.38},  {5, 0.38},  {7, 0.66},
                            {9, 0.58},  {12, 0.60}, {15, 0.58}, {17, 0.74},
                            {19, 1.00}, {21, 0.88}, {23, 0.62}, {24, 0.50}};
const Knots kCommercial = {{0, 0.30},  {6, 0.32},  {8, 0.80},  {10, 1.00},
                           {16, 1.00}, {18, 0.72}, {20, 0.45}, {24, 0.30}};
const Knots kIndustrial = {{0, 0.52},  {5, 0.52},  {6, 0.90},  {7, 1.00},
                           {17, 1.00}, {18, 0.88}, {22, 0.58}, {24, 0.52}};

}  // namespace

GridType parse_grid_type(std::string_view name) {
  if (name == "residential") return GridType::residential;
  if (name == "commercial") return GridType::commercial;
  if (name == "industrial") return GridType::industrial;
  throw ConfigError("unknown grid type '" + std::string(name) + "'");
}

std::string_view to_string(GridType type) {
  switch (type) {
    case GridType::residential: return "residential";
    case GridType::commercial: return "commercial";
    case GridType::industrial: return "industrial";
  }
  return "residential";
}

BaseProfile::BaseProfile(Knots knots) : knots_(std::move(knots)) {
  require(!knots_.empty(), "BaseProfile: no knots");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    const auto [t, kw] = knots_[i];
    require(t >= 0.0 && t <= kSecondsPerDay, "BaseProfile: knot outside day");
    require(std::isfinite(kw) && kw >= 0.0, "BaseProfile: negative load");
    require(i == 0 || t > knots_[i - 1].first,
            "BaseProfile: knots must be strictly ascending");
  }
}

BaseProfile BaseProfile::constant(double kw) { return BaseProfile({{0, kw}}); }

BaseProfile BaseProfile::standard(GridType type, double peak_kw) {
  const Knots& shape = type == GridType::residential   ? kResidential
                       : type == GridType::commercial ? kCommercial
                                                      : kIndustrial;
  Knots knots;
  knots.reserve(shape.size());
  for (auto [hour, frac] : shape) knots.emplace_back(hour * 3600.0, frac * peak_kw);
  return BaseProfile(std::move(knots));
}

double BaseProfile::at(std::int64_t t) const {
  if (knots_.size() == 1) return knots_.front().second;
  const double s = static_cast<double>(((t % kSecondsPerDay) + kSecondsPerDay) %
                                       kSecondsPerDay);
  auto hi = std::upper_bound(
      knots_.begin(), knots_.end(), s,
      [](double v, const std::pair<double, double>& k) { return v < k.first; });
  // Wrap around midnight between the last and first knot.
  std::pair<double, double> a, b;
  if (hi == knots_.begin()) {
    a = {knots_.back().first - kSecondsPerDay, knots_.back().second};
    b = knots_.front();
  } else if (hi == knots_.end()) {
    a = knots_.back();
    b = {knots_.front().first + kSecondsPerDay, knots_.front().second};
  } else {
    a = *(hi - 1);
    b = *hi;
  }
  if (b.first == a.first) return a.second;
  const double w = (s - a.first) / (b.first - a.first);
  return a.second + w * (b.second - a.second);
}

double BaseProfile::peak() const {
  double m = 0.0;
  for (const auto& k : knots_) m = std::max(m, k.second);
  return m;
}

void Substation::validate() const {
  const std::string who = "substation " + std::to_string(id) + ": ";
  if (!(rated_power_kw > 0.0) || !std::isfinite(rated_power_kw))
    throw ConfigError(who + "rated power must be > 0");
  if (neighbors.size() > static_cast<std::size_t>(kMaxNeighbors))
    throw ConfigError(who + "more than 5 neighbors");
  if (std::find(neighbors.begin(), neighbors.end(), id) != neighbors.end())
    throw ConfigError(who + "lists itself as a neighbor");
}

double instantaneous_loading(const Substation& sub, std::int64_t t,
                             double charging_kw) {
  require(charging_kw >= 0.0, "instantaneous_loading: negative charging power");
  return (sub.base.at(t) + charging_kw) / sub.rated_power_kw;
}

LoadWindow aggregate_window(std::span<const LoadSample> samples,
                            std::span<const Transaction> transactions) {
  require(!samples.empty(), "aggregate_window: no samples");
  LoadWindow w;
  double sum = 0.0;
  for (const auto& s : samples) {
    sum += s.loading;
    w.max_load = std::max(w.max_load, s.loading);
  }
  w.mean_load = sum / static_cast<double>(samples.size());
  double price_sum = 0.0;
  for (const auto& tx : transactions) {
    price_sum += tx.price;
    w.income += tx.price * tx.energy_kwh;
  }
  if (!transactions.empty())
    w.mean_price = price_sum / static_cast<double>(transactions.size());
  w.start = samples.front().time;
  w.end = samples.back().time + 1;
  return w;
}

void WindowAccumulator::reset(std::int64_t start) {
  start_ = start;
  count_ = 0;
  sum_ = 0.0;
  max_ = 0.0;
  sessions_.clear();
}

void WindowAccumulator::add_sample(double loading) {
  sum_ += loading;
  max_ = std::max(max_, loading);
  ++count_;
}

void WindowAccumulator::add_delivery(std::int64_t session, double price,
                                     double energy_kwh) {
  for (auto& s : sessions_) {
    if (s.session == session) {
      s.energy += energy_kwh;
      return;
    }
  }
  sessions_.push_back({session, price, energy_kwh});
}

LoadWindow WindowAccumulator::finish(std::int64_t end) const {
  require(count_ > 0, "aggregate_window: no samples");
  LoadWindow w;
  w.mean_load = sum_ / static_cast<double>(count_);
  w.max_load = max_;
  double price_sum = 0.0;
  int transactions = 0;
  for (const auto& s : sessions_) {
    if (s.energy <= 0.0) continue;
    price_sum += s.price;
    w.income += s.price * s.energy;
    ++transactions;
  }
  if (transactions > 0) w.mean_price = price_sum / transactions;
  w.start = start_;
  w.end = std::max(end, start_ + 1);
  return w;
}

GridState::GridState(std::vector<Substation> substations)
    : substations_(std::move(substations)),
      published_(substations_.size(), 0.0),
      current_(substations_.size(), 0.0),
      windows_(substations_.size()) {
  for (const auto& s : substations_) s.validate();
  sync_tick(0);
}

void GridState::record_step(std::int64_t t, std::span<const double> charging_kw) {
  require(t == next_step_, "GridState: steps must be recorded in order");
  require(charging_kw.size() == substations_.size(),
          "GridState: one charging value per substation");
  const auto w = static_cast<std::size_t>(t / kSyncInterval);
  for (std::size_t i = 0; i < substations_.size(); ++i) {
    const double l = instantaneous_loading(substations_[i], t, charging_kw[i]);
    current_[i] = l;
    auto& series = windows_[i];
    if (series.size() <= w) series.resize(w + 1);
    auto& acc = series[w];
    acc.sum += l;
    acc.max = acc.count == 0 ? l : std::max(acc.max, l);
    ++acc.count;
  }
  ++next_step_;
}

void GridState::sync_tick(std::int64_t t) {
  require(t % kSyncInterval == 0, "sync_tick: time not on a sync boundary");
  for (std::size_t i = 0; i < substations_.size(); ++i) {
    const auto& series = windows_[i];
    const std::int64_t w = t / kSyncInterval - 1;
    if (w >= 0 && static_cast<std::size_t>(w) < series.size() &&
        series[static_cast<std::size_t>(w)].count > 0) {
      const auto& acc = series[static_cast<std::size_t>(w)];
      published_[i] = acc.sum / static_cast<double>(acc.count);
    } else {
      published_[i] = instantaneous_loading(substations_[i], t, 0.0);
    }
  }
  last_sync_ = t;
}

std::vector<WindowStat> GridState::series(std::size_t index) const {
  std::vector<WindowStat> out;
  out.reserve(windows_[index].size());
  for (const auto& acc : windows_[index]) {
    out.push_back({acc.count ? acc.sum / static_cast<double>(acc.count) : 0.0,
                   acc.max});
  }
  return out;
}

}  // namespace evcharge
