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

#ifndef EVCHARGE_TOURS_HPP_
#define EVCHARGE_TOURS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace evcharge {

// One anonymous trip of the demand data set.
struct TripRecord {
  std::string id;
  std::string from_edge;
  std::string to_edge;
  std::int64_t depart = 0;  // seconds of day, [0, 86400)
};

// Trip compatibility digraph: f -> g iff to_edge(f) == from_edge(g) and
// depart(g) > depart(f). Successor lists are sorted by (depart, id).
struct TripGraph {
  std::vector<TripRecord> nodes;
  std::vector<std::vector<int>> successors;

  std::size_t edge_count() const;
};

// Throws ContractViolation on duplicate ids or departures outside the day.
TripGraph build_graph(std::vector<TripRecord> trips);

// A closed chain of trip indices into TripGraph::nodes, in departure order.
struct TripCycle {
  std::vector<int> trips;
};

// Greedy depth-first extraction of vertex-disjoint cycles with
// min_len..max_len trips. Roots are visited in (depart, id) order; at each
// root the shortest closing cycle is accepted first and its trips are
// consumed. A cycle closes when the last trip ends on the edge the root
// trip started from.
std::vector<TripCycle> extract_tours(const TripGraph& g, int min_len = 2,
                                     int max_len = 4);

// True when `cycle` is a valid tour of g (independent of the search).
bool is_valid_cycle(const TripGraph& g, const TripCycle& cycle);

// Trip file: CSV with header "id,from_edge,to_edge,depart".
std::vector<TripRecord> read_trips(std::istream& in);

// Tours file:
//   # evcharge-tours v1
//   tour,seq,trip_id,from_edge,to_edge,depart
//   0,0,t17,e1,e2,28800
//   ...
void write_tours(std::ostream& out, const TripGraph& g,
                 const std::vector<TripCycle>& tours);

// Inverse of write_tours: one trip list per tour, in sequence order.
std::vector<std::vector<TripRecord>> read_tours(std::istream& in);

}  // namespace evcharge

#endif  // EVCHARGE_TOURS_HPP_
