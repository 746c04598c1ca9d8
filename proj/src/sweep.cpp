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

#include "evcharge/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include "evcharge/error.hpp"
#include "evcharge/metrics.hpp"
#include "evcharge/report.hpp"

namespace evcharge {

void write_run(const ScenarioConfig& config, const MetricsRecord& metrics,
               const std::filesystem::path& dir) {
  write_report(metrics, dir);
  write_text_file(dir / "scenario.json", scenario_to_json(config));
  write_text_file(dir / "metrics.json", serialize_metrics(metrics));
}

std::vector<SweepResult> sweep(const std::vector<SweepJob>& jobs, int parallelism,
                               RunOptions options) {
  if (parallelism < 1) throw ConfigError("sweep: parallelism must be >= 1");
  std::set<std::filesystem::path> seen;
  for (const auto& job : jobs) {
    if (job.out_dir.empty()) throw ConfigError("sweep: empty output directory");
    const auto key = std::filesystem::weakly_canonical(std::filesystem::absolute(job.out_dir));
    if (!seen.insert(key).second)
      throw ConfigError("sweep: output directory used twice: " + job.out_dir.string());
  }

  std::vector<SweepResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      SweepResult& r = results[i];
      r.out_dir = jobs[i].out_dir;
      try {
        const MetricsRecord m = run(jobs[i].config, options);
        write_run(jobs[i].config, m, jobs[i].out_dir);
        r.ok = true;
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
  };
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(parallelism), jobs.size());
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return results;
}

}  // namespace evcharge
