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

#ifndef EVCHARGE_SWEEP_HPP_
#define EVCHARGE_SWEEP_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "evcharge/engine.hpp"
#include "evcharge/scenario.hpp"

namespace evcharge {

struct SweepJob {
  ScenarioConfig config;
  std::filesystem::path out_dir;
};

struct SweepResult {
  std::filesystem::path out_dir;
  bool ok = false;
  std::string error;  // empty when ok
};

// Writes scenario.json, metrics.json and the report CSVs into `dir`.
void write_run(const ScenarioConfig& config, const MetricsRecord& metrics,
               const std::filesystem::path& dir);

// Runs every job, `parallelism` at a time, each writing its own directory.
// Output directories must be distinct (ConfigError otherwise, before any
// run starts). A failing job is reported in its result and does not stop
// the others. Results come back in job order.
std::vector<SweepResult> sweep(const std::vector<SweepJob>& jobs, int parallelism,
                               RunOptions options = {});

}  // namespace evcharge

#endif  // EVCHARGE_SWEEP_HPP_
