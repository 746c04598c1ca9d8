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

// evsimctl: command-line front end for the evcharge library. Talks to the
// library only through its C interface.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evcharge/evcharge.h"

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(evc_status st, const std::string& what) {
  if (st != EVC_OK) throw Failure(what + ": " + evc_last_error());
}

using Scenario = std::unique_ptr<evc_scenario, decltype(&evc_scenario_free)>;
using Metrics = std::unique_ptr<evc_metrics, decltype(&evc_metrics_free)>;

Scenario load(const std::string& path) {
  evc_scenario* s = nullptr;
  check(evc_scenario_load(path.c_str(), &s), "loading " + path);
  return Scenario(s, evc_scenario_free);
}

// "key=json" pairs, e.g. agents.alpha=0.5 or agents.profile="QLearning".
// A bare word on the right is taken as a string.
void apply_sets(evc_scenario* s, const std::vector<std::string>& sets) {
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw Failure("--set expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    std::string value = kv.substr(eq + 1);
    if (evc_scenario_set_param(s, key.c_str(), value.c_str()) != EVC_OK) {
      const std::string quoted = "\"" + value + "\"";
      check(evc_scenario_set_param(s, key.c_str(), quoted.c_str()), "--set " + kv);
    }
  }
}

void set_number(evc_scenario* s, const char* key, long long v) {
  check(evc_scenario_set_param(s, key, std::to_string(v).c_str()), key);
}

void print_summary(const evc_metrics* m) {
  evc_summary sum{};
  check(evc_metrics_summary(m, &sum), "summary");
  std::printf("days %d  max loading %.4f  mean daily mean %.4f  overloaded grids %d (%lld windows)\n",
              sum.day_count, sum.global_max_loading, sum.mean_daily_mean_loading,
              sum.overloaded_substations, static_cast<long long>(sum.overload_windows));
  std::printf("arrivals %lld  with space %lld  decisions %lld  sessions %lld  diversions %lld\n",
              static_cast<long long>(sum.arrivals),
              static_cast<long long>(sum.arrivals_with_capacity),
              static_cast<long long>(sum.decisions), static_cast<long long>(sum.sessions),
              static_cast<long long>(sum.diversions));
  if (sum.rewards > 0 && sum.day_count > 0) {
    double first = 0, last = 0;
    check(evc_metrics_daily_reward(m, 0, &first), "reward");
    check(evc_metrics_daily_reward(m, sum.day_count - 1, &last), "reward");
    std::printf("mean reward day 0 %.4f  day %d %.4f\n", first, sum.day_count - 1, last);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EV charging / grid-load simulation control"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(evc_version()));

  // run
  auto* run = app.add_subcommand("run", "run one scenario and write its outputs");
  std::string run_config, run_out;
  std::optional<unsigned long long> run_seed;
  std::optional<long long> run_duration;
  std::vector<std::string> run_sets;
  bool run_audit = false;
  run->add_option("-c,--config", run_config, "scenario file (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--out", run_out, "output directory")->required();
  run->add_option("--seed", run_seed, "override the scenario seed");
  run->add_option("--duration", run_duration, "override duration_steps (seconds)");
  run->add_option("--set", run_sets, "override a parameter, key=json");
  run->add_flag("--audit", run_audit, "check invariants every step");

  // sweep
  auto* sw = app.add_subcommand("sweep", "run the cross product of configs, profiles and seeds");
  std::vector<std::string> sw_configs, sw_profiles, sw_sets;
  std::vector<unsigned long long> sw_seeds;
  std::string sw_out;
  int sw_parallel = 1;
  std::optional<long long> sw_duration;
  sw->add_option("-c,--config", sw_configs, "scenario files")->required()->check(CLI::ExistingFile);
  sw->add_option("-o,--out", sw_out, "root output directory")->required();
  sw->add_option("--profile", sw_profiles, "agent profiles (default: as configured)");
  sw->add_option("--seeds", sw_seeds, "seeds (default: as configured)")->delimiter(',');
  sw->add_option("-j,--parallel", sw_parallel, "concurrent runs")->check(CLI::PositiveNumber);
  sw->add_option("--duration", sw_duration, "override duration_steps");
  sw->add_option("--set", sw_sets, "override a parameter, key=json");

  // tours-extract
  auto* te = app.add_subcommand("tours-extract", "assign trips to closed tours");
  std::string te_trips, te_out;
  int te_min = 2, te_max = 4;
  te->add_option("-t,--trips", te_trips, "trip file (id,from_edge,to_edge,depart)")->required()->check(CLI::ExistingFile);
  te->add_option("-o,--out", te_out, "tours file to write")->required();
  te->add_option("--min-length", te_min, "shortest tour")->check(CLI::Range(2, 4));
  te->add_option("--max-length", te_max, "longest tour")->check(CLI::Range(2, 4));

  // report
  auto* rp = app.add_subcommand("report", "write CSV reports from a metrics file");
  std::string rp_metrics, rp_out;
  rp->add_option("-m,--metrics", rp_metrics, "metrics.json of a run")->required()->check(CLI::ExistingFile);
  rp->add_option("-o,--out", rp_out, "output directory")->required();

  // generate
  auto* gen = app.add_subcommand("generate", "write the synthetic desk scenario");
  evc_desk_options desk{};
  evc_desk_options_default(&desk);
  std::string gen_out;
  std::vector<std::string> gen_sets;
  gen->add_option("-o,--out", gen_out, "scenario file to write")->required();
  gen->add_option("--seed", desk.seed, "tour generator and run seed");
  gen->add_option("--substations", desk.substations);
  gen->add_option("--stations", desk.stations);
  gen->add_option("--vehicles", desk.vehicles);
  gen->add_option("--days", desk.days);
  gen->add_option("--spaces", desk.spaces, "parking spaces per station");
  gen->add_option("--rated-kw", desk.rated_kw, "transformer rating of every grid");
  gen->add_option("--base-peak", desk.base_peak, "base-load peak of grid 0 (fraction)");
  gen->add_option("--home-skew", desk.home_skew);
  gen->add_option("--set", gen_sets, "override a parameter, key=json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      Scenario s = load(run_config);
      if (run_seed) set_number(s.get(), "seed", static_cast<long long>(*run_seed));
      if (run_duration) set_number(s.get(), "duration_steps", *run_duration);
      apply_sets(s.get(), run_sets);
      evc_run_options opt{run_audit ? 1 : 0};
      evc_metrics* raw = nullptr;
      check(evc_run(s.get(), &opt, &raw), "run");
      Metrics m(raw, evc_metrics_free);
      check(evc_write_run(s.get(), m.get(), run_out.c_str()), "writing " + run_out);
      print_summary(m.get());
    } else if (*sw) {
      std::vector<Scenario> owned;
      std::vector<std::string> dirs;
      for (const auto& path : sw_configs) {
        const std::string stem = std::filesystem::path(path).stem().string();
        const std::vector<std::string> profiles =
            sw_profiles.empty() ? std::vector<std::string>{""} : sw_profiles;
        for (const auto& profile : profiles) {
          const std::size_t nseeds = sw_seeds.empty() ? 1 : sw_seeds.size();
          for (std::size_t i = 0; i < nseeds; ++i) {
            Scenario s = load(path);
            std::string name = stem;
            if (!profile.empty()) {
              check(evc_scenario_set_param(s.get(), "agents.profile",
                                           ("\"" + profile + "\"").c_str()),
                    "--profile " + profile);
              name += "__" + profile;
            }
            if (!sw_seeds.empty()) {
              set_number(s.get(), "seed", static_cast<long long>(sw_seeds[i]));
              name += "__seed" + std::to_string(sw_seeds[i]);
            }
            if (sw_duration) set_number(s.get(), "duration_steps", *sw_duration);
            apply_sets(s.get(), sw_sets);
            owned.push_back(std::move(s));
            dirs.push_back((std::filesystem::path(sw_out) / name).string());
          }
        }
      }
      std::vector<const evc_scenario*> ptrs;
      std::vector<const char*> cdirs;
      for (std::size_t i = 0; i < owned.size(); ++i) {
        ptrs.push_back(owned[i].get());
        cdirs.push_back(dirs[i].c_str());
      }
      std::size_t failed = 0;
      const evc_status st = evc_sweep(ptrs.data(), cdirs.data(), ptrs.size(), sw_parallel,
                                      nullptr, &failed);
      for (const auto& d : dirs) std::printf("%s\n", d.c_str());
      check(st, "sweep (" + std::to_string(failed) + " of " + std::to_string(dirs.size()) +
                    " runs failed)");
    } else if (*te) {
      if (te_min > te_max) throw Failure("--min-length exceeds --max-length");
      evc_tours_stats stats{};
      check(evc_tours_extract(te_trips.c_str(), te_out.c_str(), te_min, te_max, &stats),
            "tours-extract");
      const double kept = stats.trips ? 100.0 * stats.trips_in_tours / stats.trips : 0.0;
      std::printf("trips %lld  edges %lld  tours %lld  trips in tours %lld (%.1f%%)\n",
                  static_cast<long long>(stats.trips), static_cast<long long>(stats.edges),
                  static_cast<long long>(stats.tours),
                  static_cast<long long>(stats.trips_in_tours), kept);
    } else if (*rp) {
      evc_metrics* raw = nullptr;
      check(evc_metrics_load(rp_metrics.c_str(), &raw), "loading " + rp_metrics);
      Metrics m(raw, evc_metrics_free);
      check(evc_report(m.get(), rp_out.c_str()), "report");
    } else if (*gen) {
      evc_scenario* raw = nullptr;
      check(evc_scenario_desk(&desk, &raw), "generate");
      Scenario s(raw, evc_scenario_free);
      apply_sets(s.get(), gen_sets);
      check(evc_scenario_write(s.get(), gen_out.c_str()), "writing " + gen_out);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "evsimctl: %s\n", e.what());
    return 1;
  }
  return 0;
}
