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
#include <istream>
#include <map>
#include <ostream>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "evcharge/error.hpp"
#include "evcharge/grid.hpp"
#include "evcharge/textio.hpp"

namespace evcharge {
namespace {

constexpr std::string_view kTripHeader = "id,from_edge,to_edge,depart";
constexpr std::string_view kToursMagic = "# evcharge-tours v1";
constexpr std::string_view kToursHeader = "tour,seq,trip_id,from_edge,to_edge,depart";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

bool before(const TripRecord& a, const TripRecord& b) {
  return a.depart != b.depart ? a.depart < b.depart : a.id < b.id;
}

struct Search {
  const TripGraph& g;
  const std::vector<bool>& consumed;
  std::vector<int> path;

  bool dfs(std::size_t length) {
    const int u = path.back();
    if (path.size() == length) {
      return g.nodes[static_cast<std::size_t>(u)].to_edge ==
             g.nodes[static_cast<std::size_t>(path.front())].from_edge;
    }
    for (int v : g.successors[static_cast<std::size_t>(u)]) {
      if (consumed[static_cast<std::size_t>(v)]) continue;
      path.push_back(v);
      if (dfs(length)) return true;
      path.pop_back();
    }
    return false;
  }
};

}  // namespace

std::size_t TripGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : successors) n += s.size();
  return n;
}

TripGraph build_graph(std::vector<TripRecord> trips) {
  TripGraph g;
  g.nodes = std::move(trips);
  g.successors.resize(g.nodes.size());

  std::unordered_set<std::string_view> ids;
  std::unordered_map<std::string_view, std::vector<int>> by_origin;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& t = g.nodes[i];
    require(ids.insert(t.id).second, "build_graph: duplicate trip id '" + t.id + "'");
    require(t.depart >= 0 && t.depart < kSecondsPerDay,
            "build_graph: departure outside the day for trip '" + t.id + "'");
    by_origin[t.from_edge].push_back(static_cast<int>(i));
  }
  for (std::size_t f = 0; f < g.nodes.size(); ++f) {
    auto it = by_origin.find(g.nodes[f].to_edge);
    if (it == by_origin.end()) continue;
    auto& out = g.successors[f];
    for (int c : it->second) {
      if (g.nodes[static_cast<std::size_t>(c)].depart > g.nodes[f].depart)
        out.push_back(c);
    }
    std::sort(out.begin(), out.end(), [&](int a, int b) {
      return before(g.nodes[static_cast<std::size_t>(a)],
                    g.nodes[static_cast<std::size_t>(b)]);
    });
  }
  return g;
}

std::vector<TripCycle> extract_tours(const TripGraph& g, int min_len,
                                     int max_len) {
  require(min_len >= 1 && max_len >= min_len, "extract_tours: bad length bounds");
  std::vector<int> order(g.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return before(g.nodes[static_cast<std::size_t>(a)],
                  g.nodes[static_cast<std::size_t>(b)]);
  });

  std::vector<bool> consumed(g.nodes.size(), false);
  std::vector<TripCycle> tours;
  for (int root : order) {
    if (consumed[static_cast<std::size_t>(root)]) continue;
    for (int len = min_len; len <= max_len; ++len) {
      Search s{g, consumed, {root}};
      if (s.dfs(static_cast<std::size_t>(len))) {
        for (int v : s.path) consumed[static_cast<std::size_t>(v)] = true;
        tours.push_back(TripCycle{std::move(s.path)});
        break;
      }
    }
  }
  return tours;
}

bool is_valid_cycle(const TripGraph& g, const TripCycle& cycle) {
  const auto& c = cycle.trips;
  if (c.empty()) return false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 0 || static_cast<std::size_t>(c[i]) >= g.nodes.size()) return false;
    const auto& a = g.nodes[static_cast<std::size_t>(c[i])];
    const auto& b = g.nodes[static_cast<std::size_t>(c[(i + 1) % c.size()])];
    if (a.to_edge != b.from_edge) return false;
    if (i + 1 < c.size() && !(b.depart > a.depart)) return false;
  }
  return true;
}

std::vector<TripRecord> read_trips(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kTripHeader)
    throw ConfigError("trip file: expected header '" + std::string(kTripHeader) + "'");
  std::vector<TripRecord> trips;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto f = split(line);
    if (f.size() != 4)
      throw ConfigError("trip file line " + std::to_string(lineno) +
                        ": expected 4 fields");
    TripRecord t{std::string(f[0]), std::string(f[1]), std::string(f[2]), 0};
    try {
      t.depart = parse_int(f[3]);
    } catch (const ConfigError&) {
      throw ConfigError("trip file line " + std::to_string(lineno) +
                        ": bad departure '" + std::string(f[3]) + "'");
    }
    trips.push_back(std::move(t));
  }
  return trips;
}

void write_tours(std::ostream& out, const TripGraph& g,
                 const std::vector<TripCycle>& tours) {
  out << kToursMagic << '\n' << kToursHeader << '\n';
  for (std::size_t k = 0; k < tours.size(); ++k) {
    const auto& c = tours[k].trips;
    for (std::size_t s = 0; s < c.size(); ++s) {
      const auto& t = g.nodes[static_cast<std::size_t>(c[s])];
      out << k << ',' << s << ',' << t.id << ',' << t.from_edge << ','
          << t.to_edge << ',' << t.depart << '\n';
    }
  }
}

std::vector<std::vector<TripRecord>> read_tours(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kToursMagic)
    throw ConfigError("tours file: missing '" + std::string(kToursMagic) + "' line");
  if (!std::getline(in, line) || trim(line) != kToursHeader)
    throw ConfigError("tours file: bad column header");
  std::map<std::int64_t, std::map<std::int64_t, TripRecord>> grouped;
  int lineno = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto f = split(line);
    if (f.size() != 6)
      throw ConfigError("tours file line " + std::to_string(lineno) +
                        ": expected 6 fields");
    const auto tour = parse_int(f[0]);
    const auto seq = parse_int(f[1]);
    auto& slot = grouped[tour];
    if (slot.count(seq))
      throw ConfigError("tours file line " + std::to_string(lineno) +
                        ": duplicate sequence number");
    slot[seq] = TripRecord{std::string(f[2]), std::string(f[3]),
                           std::string(f[4]), parse_int(f[5])};
  }
  std::vector<std::vector<TripRecord>> out;
  for (auto& [tour, trips] : grouped) {
    auto& v = out.emplace_back();
    for (auto& [seq, t] : trips) v.push_back(std::move(t));
  }
  return out;
}

}  // namespace evcharge
