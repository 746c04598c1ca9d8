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

// Shared test fixtures.

#ifndef EVCHARGE_TESTS_FIXTURES_HPP_
#define EVCHARGE_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <string>
#include <vector>

#include "evcharge/rng.hpp"
#include "evcharge/tours.hpp"

namespace fixture {

struct PlantedTrips {
  std::vector<evcharge::TripRecord> trips;          // shuffled
  std::vector<std::vector<std::string>> cycles;     // planted, trip ids in order
};

// `cycles` disjoint cycles of length 2-4 on private edges, plus `noise`
// trips that touch them without closing any loop:
//   - leaving a cycle edge to a fresh dead-end edge
//   - entering a cycle edge from a fresh source edge
//   - inside a separate pool, always from a lower to a higher pool edge
inline PlantedTrips planted_trips(std::uint64_t seed, int cycles, int noise) {
  evcharge::Rng rng = evcharge::Rng::stream(seed, "planted-trips");
  PlantedTrips out;
  std::vector<std::string> cycle_edges;
  for (int c = 0; c < cycles; ++c) {
    const int len = 2 + static_cast<int>(rng.below(3));
    std::int64_t t = 3600 + static_cast<std::int64_t>(rng.below(6 * 3600));
    std::vector<std::string> ids;
    for (int k = 0; k < len; ++k) {
      const std::string from = "c" + std::to_string(c) + "e" + std::to_string(k);
      const std::string to = "c" + std::to_string(c) + "e" + std::to_string((k + 1) % len);
      const std::string id = "p" + std::to_string(c) + "_" + std::to_string(k);
      out.trips.push_back({id, from, to, t});
      ids.push_back(id);
      cycle_edges.push_back(from);
      t += 600 + static_cast<std::int64_t>(rng.below(4 * 3600));
    }
    out.cycles.push_back(ids);
  }
  for (int n = 0; n < noise; ++n) {
    const std::string id = "n" + std::to_string(n);
    const auto depart = static_cast<std::int64_t>(rng.below(86400));
    const std::string tag = std::to_string(n);
    switch (rng.below(3)) {
      case 0:
        out.trips.push_back({id, cycle_edges[rng.below(cycle_edges.size())], "sink" + tag, depart});
        break;
      case 1:
        out.trips.push_back({id, "src" + tag, cycle_edges[rng.below(cycle_edges.size())], depart});
        break;
      default: {
        const auto a = rng.below(40);
        const auto b = a + 1 + rng.below(40);
        out.trips.push_back({id, "pool" + std::to_string(a), "pool" + std::to_string(b), depart});
      }
    }
  }
  rng.shuffle(std::span<evcharge::TripRecord>(out.trips));
  return out;
}

inline std::vector<std::vector<std::string>> cycle_ids(
    const evcharge::TripGraph& g, const std::vector<evcharge::TripCycle>& cycles) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : cycles) {
    auto& ids = out.emplace_back();
    for (int t : c.trips) ids.push_back(g.nodes[static_cast<std::size_t>(t)].id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fixture

#endif  // EVCHARGE_TESTS_FIXTURES_HPP_
