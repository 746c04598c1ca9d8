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

#ifndef EVCHARGE_REPORT_HPP_
#define EVCHARGE_REPORT_HPP_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "evcharge/metrics.hpp"

namespace evcharge {

inline constexpr double kOverloadThreshold = 1.0;

// (file name, content) pairs in a fixed order:
//   substation_daily.csv  substation,day,max_loading,mean_loading
//   grid_daily.csv        day,max_of_maxima,mean_of_maxima
//   rewards_daily.csv     profile,day,mean_reward,decisions
//   reward_change.csv     profile,first_day,last_day,first_day_mean,last_day_mean,delta
//   overloads.csv         substation,overload_windows,max_loading
//   vehicle_energy.csv    vehicle,initial_kwh,charged_kwh,driven_kwh,unserved_kwh,
//                         stranded_trips,final_kwh,balance_error_kwh
// ',' delimited, '.' decimals, LF endings, shortest round-trip numbers.
// Days are 0-based. Days without rewards get no rewards_daily row; the
// reward change compares the first and the last day that have rewards.
using ReportFiles = std::vector<std::pair<std::string, std::string>>;

ReportFiles render_report(const MetricsRecord& m);

// Writes every report file into `dir` (created if missing). IoError on failure.
void write_report(const MetricsRecord& m, const std::filesystem::path& dir);

// Writes `content` to `path`, throwing IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace evcharge

#endif  // EVCHARGE_REPORT_HPP_
