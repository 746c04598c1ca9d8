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

#include "evcharge/report.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "evcharge/error.hpp"
#include "evcharge/textio.hpp"

namespace evcharge {
namespace {

std::string num(double v) { return format_double(v); }

struct DayStat {
  double max = 0.0;
  double sum = 0.0;
  std::int64_t n = 0;
};

}  // namespace

ReportFiles render_report(const MetricsRecord& m) {
  const int days = m.day_count();
  std::ostringstream sub_daily, grid_daily, rewards, change, overloads, energy;
  sub_daily << "substation,day,max_loading,mean_loading\n";
  grid_daily << "day,max_of_maxima,mean_of_maxima\n";
  rewards << "profile,day,mean_reward,decisions\n";
  change << "profile,first_day,last_day,first_day_mean,last_day_mean,delta\n";
  overloads << "substation,overload_windows,max_loading\n";
  energy << "vehicle,initial_kwh,charged_kwh,driven_kwh,unserved_kwh,stranded_trips,"
            "final_kwh,balance_error_kwh\n";

  std::vector<DayStat> grid(static_cast<std::size_t>(std::max(days, 0)));
  for (const auto& s : m.substations) {
    std::vector<DayStat> per(grid.size());
    std::int64_t over = 0;
    double peak = 0.0;
    for (std::size_t w = 0; w < s.windows.size(); ++w) {
      const auto& win = s.windows[w];
      const auto d = w / static_cast<std::size_t>(kWindowsPerDay);
      if (d >= per.size()) break;
      per[d].max = std::max(per[d].max, win.max);
      per[d].sum += win.mean;
      ++per[d].n;
      grid[d].max = std::max(grid[d].max, win.max);
      grid[d].sum += win.max;
      ++grid[d].n;
      if (win.max > kOverloadThreshold) ++over;
      peak = std::max(peak, win.max);
    }
    for (std::size_t d = 0; d < per.size(); ++d) {
      if (per[d].n == 0) continue;
      sub_daily << s.substation << ',' << d << ',' << num(per[d].max) << ','
                << num(per[d].sum / static_cast<double>(per[d].n)) << '\n';
    }
    overloads << s.substation << ',' << over << ',' << num(peak) << '\n';
  }
  for (std::size_t d = 0; d < grid.size(); ++d) {
    if (grid[d].n == 0) continue;
    grid_daily << d << ',' << num(grid[d].max) << ','
               << num(grid[d].sum / static_cast<double>(grid[d].n)) << '\n';
  }

  std::map<int, std::pair<double, std::int64_t>> by_day;
  for (const auto& r : m.rewards) {
    auto& e = by_day[r.day];
    e.first += r.reward;
    ++e.second;
  }
  for (const auto& [d, e] : by_day) {
    rewards << m.profile << ',' << d << ',' << num(e.first / static_cast<double>(e.second))
            << ',' << e.second << '\n';
  }
  if (!by_day.empty()) {
    const auto& [d0, e0] = *by_day.begin();
    const auto& [d1, e1] = *by_day.rbegin();
    const double first = e0.first / static_cast<double>(e0.second);
    const double last = e1.first / static_cast<double>(e1.second);
    change << m.profile << ',' << d0 << ',' << d1 << ',' << num(first) << ','
           << num(last) << ',' << num(last - first) << '\n';
  }

  for (const auto& v : m.vehicles) {
    const auto& l = v.ledger;
    const double err = l.initial_kwh + l.charged_kwh - l.driven_kwh - v.final_kwh;
    energy << v.vehicle << ',' << num(l.initial_kwh) << ',' << num(l.charged_kwh) << ','
           << num(l.driven_kwh) << ',' << num(l.unserved_kwh) << ',' << l.stranded_trips
           << ',' << num(v.final_kwh) << ',' << num(err) << '\n';
  }

  return {{"substation_daily.csv", sub_daily.str()},
          {"grid_daily.csv", grid_daily.str()},
          {"rewards_daily.csv", rewards.str()},
          {"reward_change.csv", change.str()},
          {"overloads.csv", overloads.str()},
          {"vehicle_energy.csv", energy.str()}};
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_report(const MetricsRecord& m, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  for (const auto& [name, content] : render_report(m)) write_text_file(dir / name, content);
}

}  // namespace evcharge
