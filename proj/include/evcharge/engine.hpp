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

#ifndef EVCHARGE_ENGINE_HPP_
#define EVCHARGE_ENGINE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "evcharge/agents.hpp"
#include "evcharge/grid.hpp"
#include "evcharge/metrics.hpp"
#include "evcharge/mobility.hpp"
#include "evcharge/rng.hpp"
#include "evcharge/scenario.hpp"

namespace evcharge {

struct RunOptions {
  // Check the world invariants every step (SoC bounds, occupancy,
  // session/space consistency, offer levels) and the end-of-run ones
  // (energy balance, one reward per decision, SPD designs). Violations
  // throw ContractViolation.
  bool audit = false;
};

// Deterministic single-threaded simulation of one scenario.
//
// Each one-second step t:
//   1. t % 300 == 0: publish the averaged grid loadings (sync_tick)
//   2. advance vehicles in id order (departures, diversion, driving,
//      arrivals, charging of running sessions)
//   3. shuffle the arrivals with the order stream; for each arrival that
//      finds a free space: resolve the station agent's pending decision,
//      build the context, decide, apply, let the vehicle decide to charge
//   4. record the one-second loading of every substation
class Simulation {
 public:
  explicit Simulation(const ScenarioConfig& config, RunOptions options = {});

  void step();
  bool done() const { return t_ >= config_.duration_steps; }
  std::int64_t time() const { return t_; }

  // Resolves all pending decisions against their partial windows and
  // returns the metrics. Call once, after the last step.
  MetricsRecord finish();

  const ScenarioConfig& config() const { return config_; }
  const GridState& grid() const { return grid_; }
  std::span<const Vehicle> vehicles() const { return vehicles_; }
  std::span<const ChargingStation> stations() const { return stations_; }
  std::span<const Agent> agents() const { return agents_; }

 private:
  struct Delivery {
    int station;
    std::int64_t session;
    double price;
    double energy_kwh;
  };

  void handle_departure(Vehicle& v);
  void handle_arrival(Vehicle& v);
  void resolve_pending(std::size_t station, double soc);
  void audit_step() const;
  void audit_final() const;

  ScenarioConfig config_;
  RunOptions options_;
  GridState grid_;
  std::vector<Vehicle> vehicles_;
  std::vector<ChargingStation> stations_;
  std::vector<Agent> agents_;
  std::vector<int> area_station_;
  std::vector<WindowAccumulator> windows_;
  std::vector<StepActions> step_actions_;
  std::vector<double> charging_kw_;
  std::vector<Delivery> deliveries_;
  std::vector<int> arrivals_;
  Rng order_rng_;
  std::int64_t t_ = 0;
  std::int64_t next_session_ = 0;
  bool finished_ = false;
  MetricsRecord metrics_;
};

MetricsRecord run(const ScenarioConfig& config, RunOptions options = {});

}  // namespace evcharge

#endif  // EVCHARGE_ENGINE_HPP_
