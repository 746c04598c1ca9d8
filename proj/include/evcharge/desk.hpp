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

#ifndef EVCHARGE_DESK_HPP_
#define EVCHARGE_DESK_HPP_

#include <cstdint>

#include "evcharge/scenario.hpp"

namespace evcharge {

// A small synthetic city: areas on a 2 km lattice, each with one station,
// grouped into substations. Substation 0 is the residential grid most
// vehicles call home; its base load peaks at `base_peak` of the rated
// power. Every other grid peaks lower.
struct DeskOptions {
  std::uint64_t seed = 1;
  int substations = 8;
  int stations = 20;
  int vehicles = 200;
  int days = 10;
  int spaces = 20;
  double rated_kw = 250.0;  // every grid, so mean loading tracks energy
  double base_peak = 0.55;
  double home_skew = 1.0;   // home weight of area i ~ 1/(i+1)^skew
  double walking_km = 2.1;  // lattice neighbors only
  AgentParams agents;
  VehicleBehavior behavior;
};

ScenarioConfig make_desk_scenario(const DeskOptions& options);

}  // namespace evcharge

#endif  // EVCHARGE_DESK_HPP_
