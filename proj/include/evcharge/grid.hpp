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

#ifndef EVCHARGE_GRID_HPP_
#define EVCHARGE_GRID_HPP_

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace evcharge {

inline constexpr std::int64_t kSecondsPerDay = 86400;
// Charging loads are averaged and published to the agents at this cadence.
inline constexpr std::int64_t kSyncInterval = 300;
inline constexpr int kMaxNeighbors = 5;

enum class GridType { residential, commercial, industrial };

GridType parse_grid_type(std::string_view name);
std::string_view to_string(GridType type);

// Periodic piecewise-linear daily load curve in kW.
class BaseProfile {
 public:
  BaseProfile() = default;
  // (seconds-of-day, kW) knots, ascending, all within [0, 86400].
  explicit BaseProfile(std::vector<std::pair<double, double>> knots);

  static BaseProfile constant(double kw);
  // Synthetic standard shape for the grid type, scaled so that its daily
  // maximum equals peak_kw.
  //   residential: night trough, morning shoulder, dominant evening peak
  //   commercial:  business-hours plateau
  //   industrial:  flat high daytime
  static BaseProfile standard(GridType type, double peak_kw);

  double at(std::int64_t t) const;
  double peak() const;
  const std::vector<std::pair<double, double>>& knots() const {
    return knots_;
  }

 private:
  std::vector<std::pair<double, double>> knots_;
};

struct Substation {
  int id = 0;
  double rated_power_kw = 1.0;
  BaseProfile base;
  std::vector<int> neighbors;  // at most 5, never itself
  GridType type = GridType::residential;

  void validate() const;
};

struct LoadSample {
  std::int64_t time = 0;
  double loading = 0.0;  // fraction of rated power; > 1 is an overload
};

struct Transaction {
  double price = 0.0;       // currency / kWh
  double energy_kwh = 0.0;
};

struct LoadWindow {
  double mean_load = 0.0;
  double max_load = 0.0;
  double mean_price = 0.0;
  double income = 0.0;
  std::int64_t start = 0;
  std::int64_t end = 0;
};

// (base(t) + charging_kw) / rated. Throws on negative charging power.
double instantaneous_loading(const Substation& sub, std::int64_t t,
                             double charging_kw);

// Samples are one-second loading samples; the window spans
// [first.time, last.time + 1).
LoadWindow aggregate_window(std::span<const LoadSample> samples,
                            std::span<const Transaction> transactions);

// Streaming form of aggregate_window used by the engine for each agent's
// reward window; yields identical results for the same inputs.
class WindowAccumulator {
 public:
  void reset(std::int64_t start);
  void add_sample(double loading);
  // Energy delivered in one step by a session at its latched price.
  void add_delivery(std::int64_t session, double price, double energy_kwh);

  bool empty() const { return count_ == 0; }
  std::int64_t start() const { return start_; }
  LoadWindow finish(std::int64_t end) const;

 private:
  struct SessionTotal {
    std::int64_t session;
    double price;
    double energy;
  };
  std::int64_t start_ = 0;
  std::int64_t count_ = 0;
  double sum_ = 0.0;
  double max_ = 0.0;
  std::vector<SessionTotal> sessions_;
};

struct WindowStat {
  double mean = 0.0;
  double max = 0.0;
};

// Owns the substations and their loading history.
//
// record_step() is fed every simulated second with the charging power per
// substation; sync_tick() publishes the mean loading of the last completed
// 300-second window, which is all the agents ever observe.
class GridState {
 public:
  explicit GridState(std::vector<Substation> substations);

  std::span<const Substation> substations() const { return substations_; }
  std::size_t size() const { return substations_.size(); }

  void record_step(std::int64_t t, std::span<const double> charging_kw);
  void sync_tick(std::int64_t t);

  double published(std::size_t index) const { return published_[index]; }
  std::span<const double> published() const { return published_; }
  // Loading of the most recent recorded step.
  double current(std::size_t index) const { return current_[index]; }
  std::int64_t last_sync() const { return last_sync_; }

  // Five-minute mean/max series for one substation, one entry per started
  // window.
  std::vector<WindowStat> series(std::size_t index) const;

 private:
  struct Accum {
    double sum = 0.0;
    double max = 0.0;
    std::int64_t count = 0;
  };
  std::vector<Substation> substations_;
  std::vector<double> published_;
  std::vector<double> current_;
  std::vector<std::vector<Accum>> windows_;
  std::int64_t next_step_ = 0;
  std::int64_t last_sync_ = -1;
};

}  // namespace evcharge

#endif  // EVCHARGE_GRID_HPP_
