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

#include "evcharge/tours.hpp"

#include <algorithm>
#include <sstream>

#include "evcharge/error.hpp"
#include "fixtures.hpp"
#include "gtest/gtest.h"

namespace evcharge {
namespace {

constexpr std::int64_t h(int hours) { return hours * 3600; }

TEST(TripGraph, EdgeWhenEndpointsMatchAndTimeAdvances) {
  const auto g = build_graph({{"t1", "A", "B", h(8)}, {"t2", "B", "A", h(17)}});
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.successors[0], std::vector<int>{1});
  EXPECT_TRUE(g.successors[1].empty());
}

TEST(TripGraph, NoEdgeOnEndpointMismatch) {
  EXPECT_EQ(build_graph({{"t1", "A", "B", h(8)}, {"t2", "C", "A", h(17)}}).edge_count(), 0u);
}

TEST(TripGraph, NoEdgeBackInTime) {
  // Only t2 -> t1 (B->A at 8h, then A->B at 17h) goes forward in time.
  const auto g = build_graph({{"t1", "A", "B", h(17)}, {"t2", "B", "A", h(8)}});
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_TRUE(g.successors[0].empty());
  EXPECT_EQ(g.successors[1], std::vector<int>{0});
  // Equal departure times do not connect either.
  EXPECT_EQ(build_graph({{"t1", "A", "B", h(8)}, {"t2", "B", "A", h(8)}}).edge_count(), 0u);
}

TEST(TripGraph, RejectsBadInput) {
  EXPECT_THROW(build_graph({{"t", "A", "B", 0}, {"t", "B", "A", 5}}), ContractViolation);
  EXPECT_THROW(build_graph({{"t", "A", "B", 86400}}), ContractViolation);
}

TEST(ExtractTours, TwoCycle) {
  const auto g = build_graph({{"t1", "A", "B", h(8)}, {"t2", "B", "A", h(17)}});
  const auto tours = extract_tours(g);
  ASSERT_EQ(tours.size(), 1u);
  EXPECT_EQ(tours[0].trips, (std::vector<int>{0, 1}));
  EXPECT_TRUE(is_valid_cycle(g, tours[0]));
}

TEST(ExtractTours, FiveCycleIsTooLong) {
  const auto g = build_graph({{"a", "E0", "E1", h(1)}, {"b", "E1", "E2", h(2)},
                              {"c", "E2", "E3", h(3)}, {"d", "E3", "E4", h(4)},
                              {"e", "E4", "E0", h(5)}});
  EXPECT_TRUE(extract_tours(g).empty());
  EXPECT_EQ(extract_tours(g, 2, 5).size(), 1u);
}

TEST(ExtractTours, TwoDisjointCycles) {
  const auto g = build_graph({{"x1", "A", "B", h(7)}, {"y1", "C", "D", h(9)},
                              {"x2", "B", "A", h(16)}, {"y2", "D", "C", h(18)}});
  const auto ids = fixture::cycle_ids(g, extract_tours(g));
  EXPECT_EQ(ids, (std::vector<std::vector<std::string>>{{"x1", "x2"}, {"y1", "y2"}}));
}

TEST(ExtractTours, ShortestCycleFirstAndTripsConsumed) {
  // From r: r->s->r (2) and r->u->v->r (3). The 2-cycle wins and the
  // 3-cycle cannot reuse r afterwards.
  const auto g = build_graph({{"r", "A", "B", h(6)}, {"s", "B", "A", h(9)},
                              {"u", "B", "C", h(7)}, {"v", "C", "A", h(8)}});
  const auto ids = fixture::cycle_ids(g, extract_tours(g));
  EXPECT_EQ(ids, (std::vector<std::vector<std::string>>{{"r", "s"}}));
}

TEST(ExtractTours, EarliestSuccessorPreferred) {
  const auto g = build_graph({{"r", "A", "B", h(6)}, {"late", "B", "A", h(18)},
                              {"early", "B", "A", h(12)}});
  const auto ids = fixture::cycle_ids(g, extract_tours(g));
  EXPECT_EQ(ids, (std::vector<std::vector<std::string>>{{"r", "early"}}));
}

TEST(ExtractTours, RecoversPlantedCycles) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto f = fixture::planted_trips(seed, 50, 200);
    const auto g = build_graph(f.trips);
    const auto tours = extract_tours(g);
    for (const auto& t : tours) EXPECT_TRUE(is_valid_cycle(g, t));
    std::sort(f.cycles.begin(), f.cycles.end());
    EXPECT_EQ(fixture::cycle_ids(g, tours), f.cycles) << "seed " << seed;
  }
}

TEST(ToursIo, TripFileAndToursRoundTrip) {
  std::istringstream in(
      "id,from_edge,to_edge,depart\n"
      "t1,A,B,28800\n"
      "\n"
      "t2,B,A,61200\n");
  const auto trips = read_trips(in);
  ASSERT_EQ(trips.size(), 2u);
  EXPECT_EQ(trips[1].depart, 61200);
  const auto g = build_graph(trips);
  std::ostringstream out;
  write_tours(out, g, extract_tours(g));
  EXPECT_EQ(out.str(),
            "# evcharge-tours v1\n"
            "tour,seq,trip_id,from_edge,to_edge,depart\n"
            "0,0,t1,A,B,28800\n"
            "0,1,t2,B,A,61200\n");
  std::istringstream back(out.str());
  const auto tours = read_tours(back);
  ASSERT_EQ(tours.size(), 1u);
  EXPECT_EQ(tours[0][1].id, "t2");
}

TEST(ToursIo, RejectsMalformedFiles) {
  std::istringstream no_header("t1,A,B,0\n");
  EXPECT_THROW(read_trips(no_header), ConfigError);
  std::istringstream bad_time("id,from_edge,to_edge,depart\nt1,A,B,soon\n");
  EXPECT_THROW(read_trips(bad_time), ConfigError);
  std::istringstream short_row("id,from_edge,to_edge,depart\nt1,A,B\n");
  EXPECT_THROW(read_trips(short_row), ConfigError);
  std::istringstream no_magic("tour,seq,trip_id,from_edge,to_edge,depart\n");
  EXPECT_THROW(read_tours(no_magic), ConfigError);
}

}  // namespace
}  // namespace evcharge
