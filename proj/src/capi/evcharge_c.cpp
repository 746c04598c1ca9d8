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

#include "evcharge/evcharge.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "evcharge/desk.hpp"
#include "evcharge/engine.hpp"
#include "evcharge/error.hpp"
#include "evcharge/linucb.hpp"
#include "evcharge/metrics.hpp"
#include "evcharge/qlearning.hpp"
#include "evcharge/report.hpp"
#include "evcharge/rng.hpp"
#include "evcharge/scenario.hpp"
#include "evcharge/sweep.hpp"
#include "evcharge/tours.hpp"

struct evc_scenario {
  evcharge::ScenarioConfig config;
};
struct evc_metrics {
  evcharge::MetricsRecord record;
};
struct evc_linucb {
  evcharge::LinUcb model;
};
struct evc_qlearner {
  evcharge::QLearnerConfig config;
  evcharge::QTable table;
};
struct evc_rng {
  evcharge::Rng rng;
};

namespace {

thread_local std::string g_last_error;

// Argument problems are reported as InvalidArgument so they do not look
// like configuration or model errors.
struct InvalidArgument : std::runtime_error {
  using std::runtime_error::runtime_error;
};

evc_status fail(evc_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <class F>
evc_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return EVC_OK;
  } catch (const InvalidArgument& e) {
    return fail(EVC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const evcharge::ConfigError& e) {
    return fail(EVC_ERR_CONFIG, e.what());
  } catch (const evcharge::IoError& e) {
    return fail(EVC_ERR_IO, e.what());
  } catch (const evcharge::ContractViolation& e) {
    return fail(EVC_ERR_CONTRACT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(EVC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(EVC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(EVC_ERR_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) throw InvalidArgument(std::string(what) + " is null");
}

void in_range(int32_t v, int32_t n, const char* what) {
  if (v < 0 || v >= n) throw InvalidArgument(std::string(what) + " out of range");
}

// Learner hyperparameters are configuration at this boundary, not a
// caller's broken precondition.
template <class F>
void as_config(F&& check) {
  try {
    check();
  } catch (const evcharge::ContractViolation& e) {
    throw evcharge::ConfigError(e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

evcharge::ContextVector vec(const double* p, int n) {
  return evcharge::ContextVector(std::span<const double>(p, static_cast<std::size_t>(n)));
}

std::vector<int> valid_list(const int32_t* valid, size_t count, int all) {
  std::vector<int> out;
  if (valid == nullptr) {
    for (int a = 0; a < all; ++a) out.push_back(a);
  } else {
    out.assign(valid, valid + count);
  }
  return out;
}

}  // namespace

extern "C" {

const char* evc_version(void) { return "1.0.0"; }

const char* evc_last_error(void) { return g_last_error.c_str(); }

const char* evc_status_name(evc_status status) {
  switch (status) {
    case EVC_OK: return "ok";
    case EVC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case EVC_ERR_CONFIG: return "configuration error";
    case EVC_ERR_IO: return "i/o error";
    case EVC_ERR_CONTRACT: return "contract violation";
    case EVC_ERR_RUN: return "run failed";
    case EVC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void evc_string_free(char* s) { std::free(s); }

evc_status evc_scenario_load(const char* path, evc_scenario** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new evc_scenario{evcharge::load_scenario(path)};
  });
}

evc_status evc_scenario_from_json(const char* json, const char* base_dir,
                                  evc_scenario** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new evc_scenario{
        evcharge::parse_scenario(json, base_dir ? base_dir : std::filesystem::path{})};
  });
}

void evc_desk_options_default(evc_desk_options* options) {
  if (!options) return;
  const evcharge::DeskOptions d;
  options->seed = d.seed;
  options->substations = d.substations;
  options->stations = d.stations;
  options->vehicles = d.vehicles;
  options->days = d.days;
  options->spaces = d.spaces;
  options->rated_kw = d.rated_kw;
  options->base_peak = d.base_peak;
  options->home_skew = d.home_skew;
}

evc_status evc_scenario_desk(const evc_desk_options* options, evc_scenario** out) {
  return guarded([&] {
    need(options, "options");
    need(out, "out");
    evcharge::DeskOptions d;
    d.seed = options->seed;
    d.substations = options->substations;
    d.stations = options->stations;
    d.vehicles = options->vehicles;
    d.days = options->days;
    d.spaces = options->spaces;
    d.rated_kw = options->rated_kw;
    d.base_peak = options->base_peak;
    d.home_skew = options->home_skew;
    *out = new evc_scenario{evcharge::make_desk_scenario(d)};
  });
}

evc_status evc_scenario_set_param(evc_scenario* scenario, const char* key,
                                  const char* value_json) {
  return guarded([&] {
    need(scenario, "scenario");
    need(key, "key");
    need(value_json, "value");
    scenario->config = evcharge::with_parameter(scenario->config, key, value_json);
  });
}

evc_status evc_scenario_to_json(const evc_scenario* scenario, char** out) {
  return guarded([&] {
    need(scenario, "scenario");
    need(out, "out");
    *out = dup_string(evcharge::scenario_to_json(scenario->config));
  });
}

evc_status evc_scenario_write(const evc_scenario* scenario, const char* path) {
  return guarded([&] {
    need(scenario, "scenario");
    need(path, "path");
    evcharge::write_text_file(path, evcharge::scenario_to_json(scenario->config));
  });
}

void evc_scenario_free(evc_scenario* scenario) { delete scenario; }

evc_status evc_run(const evc_scenario* scenario, const evc_run_options* options,
                   evc_metrics** out) {
  return guarded([&] {
    need(scenario, "scenario");
    need(out, "out");
    evcharge::RunOptions ro;
    ro.audit = options && options->audit != 0;
    *out = new evc_metrics{evcharge::run(scenario->config, ro)};
  });
}

evc_status evc_metrics_summary(const evc_metrics* metrics, evc_summary* out) {
  return guarded([&] {
    need(metrics, "metrics");
    need(out, "out");
    const auto& m = metrics->record;
    const auto s = evcharge::summarize(m);
    out->global_max_loading = s.global_max_loading;
    out->mean_daily_mean_loading = s.mean_daily_mean_loading;
    out->overloaded_substations = s.overloaded_substations;
    out->day_count = m.day_count();
    out->overload_windows = s.overload_windows;
    out->arrivals = m.arrivals;
    out->arrivals_with_capacity = m.arrivals_with_capacity;
    out->decisions = m.decisions;
    out->sessions = m.sessions;
    out->diversions = m.diversions;
    out->rewards = static_cast<int64_t>(m.rewards.size());
  });
}

evc_status evc_metrics_daily_reward(const evc_metrics* metrics, int32_t day,
                                    double* out) {
  return guarded([&] {
    need(metrics, "metrics");
    need(out, "out");
    const auto s = evcharge::summarize(metrics->record);
    if (day < 0 || static_cast<std::size_t>(day) >= s.daily_mean_reward.size())
      throw InvalidArgument("day out of range");
    *out = s.daily_mean_reward[static_cast<std::size_t>(day)];
  });
}

evc_status evc_metrics_save(const evc_metrics* metrics, const char* path) {
  return guarded([&] {
    need(metrics, "metrics");
    need(path, "path");
    evcharge::write_text_file(path, evcharge::serialize_metrics(metrics->record));
  });
}

evc_status evc_metrics_load(const char* path, evc_metrics** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new evc_metrics{evcharge::parse_metrics(evcharge::read_text_file(path))};
  });
}

void evc_metrics_free(evc_metrics* metrics) { delete metrics; }

evc_status evc_report(const evc_metrics* metrics, const char* dir) {
  return guarded([&] {
    need(metrics, "metrics");
    need(dir, "dir");
    evcharge::write_report(metrics->record, dir);
  });
}

evc_status evc_write_run(const evc_scenario* scenario, const evc_metrics* metrics,
                         const char* dir) {
  return guarded([&] {
    need(scenario, "scenario");
    need(metrics, "metrics");
    need(dir, "dir");
    evcharge::write_run(scenario->config, metrics->record, dir);
  });
}

evc_status evc_sweep(const evc_scenario* const* scenarios, const char* const* out_dirs,
                     size_t count, int32_t parallelism, evc_run_options const* options,
                     size_t* failed) {
  std::size_t failures = 0;
  std::string report;
  const evc_status st = guarded([&] {
    if (count > 0) {
      need(scenarios, "scenarios");
      need(out_dirs, "out_dirs");
    }
    std::vector<evcharge::SweepJob> jobs;
    for (size_t i = 0; i < count; ++i) {
      need(scenarios[i], "scenario");
      need(out_dirs[i], "out_dir");
      jobs.push_back({scenarios[i]->config, out_dirs[i]});
    }
    evcharge::RunOptions ro;
    ro.audit = options && options->audit != 0;
    for (const auto& r : evcharge::sweep(jobs, parallelism, ro)) {
      if (r.ok) continue;
      ++failures;
      report += (report.empty() ? "" : "; ") + r.out_dir.string() + ": " + r.error;
    }
  });
  if (failed) *failed = failures;
  if (st != EVC_OK) return st;
  if (failures > 0) return fail(EVC_ERR_RUN, report.c_str());
  return EVC_OK;
}

evc_status evc_tours_extract(const char* trips_path, const char* tours_path,
                             int32_t min_len, int32_t max_len, evc_tours_stats* stats) {
  return guarded([&] {
    need(trips_path, "trips_path");
    need(tours_path, "tours_path");
    std::ifstream in(trips_path);
    if (!in) throw evcharge::IoError(std::string("cannot open '") + trips_path + "'");
    const auto g = evcharge::build_graph(evcharge::read_trips(in));
    const auto tours = evcharge::extract_tours(g, min_len, max_len);
    std::ostringstream out;
    evcharge::write_tours(out, g, tours);
    evcharge::write_text_file(tours_path, out.str());
    if (stats) {
      stats->trips = static_cast<int64_t>(g.nodes.size());
      stats->edges = static_cast<int64_t>(g.edge_count());
      stats->tours = static_cast<int64_t>(tours.size());
      int64_t used = 0;
      for (const auto& t : tours) used += static_cast<int64_t>(t.trips.size());
      stats->trips_in_tours = used;
    }
  });
}

evc_status evc_rng_create(uint64_t seed, const char* stream, evc_rng** out) {
  return guarded([&] {
    need(out, "out");
    *out = stream ? new evc_rng{evcharge::Rng::stream(seed, stream)}
                  : new evc_rng{evcharge::Rng(seed)};
  });
}

evc_status evc_rng_uniform(evc_rng* rng, double* out) {
  return guarded([&] {
    need(rng, "rng");
    need(out, "out");
    *out = rng->rng.uniform();
  });
}

evc_status evc_rng_normal(evc_rng* rng, double* out) {
  return guarded([&] {
    need(rng, "rng");
    need(out, "out");
    *out = rng->rng.normal();
  });
}

void evc_rng_free(evc_rng* rng) { delete rng; }

evc_status evc_linucb_create(double alpha, int32_t dimension, int32_t shared_dimension,
                             int32_t arms, evc_linucb** out) {
  return guarded([&] {
    need(out, "out");
    evcharge::LinUcbConfig cfg;
    cfg.alpha = alpha;
    cfg.dimension = dimension;
    cfg.shared_dimension = shared_dimension;
    cfg.arm_count = arms;
    as_config([&] { cfg.validate(); });
    *out = new evc_linucb{evcharge::LinUcb(cfg)};
  });
}

evc_status evc_linucb_predict(const evc_linucb* model, int32_t arm, const double* x,
                              const double* z, double* out) {
  return guarded([&] {
    need(model, "model");
    need(x, "x");
    need(out, "out");
    const auto& cfg = model->model.config();
    in_range(arm, cfg.arm_count, "arm");
    const auto xv = vec(x, cfg.dimension);
    if (cfg.hybrid()) {
      need(z, "z");
      const auto zv = vec(z, cfg.shared_dimension);
      *out = model->model.predict(arm, xv, &zv);
    } else {
      *out = model->model.predict(arm, xv);
    }
  });
}

evc_status evc_linucb_select(const evc_linucb* model, const double* x, const double* z,
                             const int32_t* valid, size_t valid_count, evc_rng* rng,
                             int32_t* out) {
  return guarded([&] {
    need(model, "model");
    need(x, "x");
    need(rng, "rng");
    need(out, "out");
    const auto& cfg = model->model.config();
    const auto v = valid_list(valid, valid_count, cfg.arm_count);
    const auto xv = vec(x, cfg.dimension);
    if (cfg.hybrid()) {
      need(z, "z");
      const auto zv = vec(z, cfg.shared_dimension);
      *out = model->model.select(xv, &zv, v, rng->rng);
    } else {
      *out = model->model.select(xv, nullptr, v, rng->rng);
    }
  });
}

evc_status evc_linucb_update(evc_linucb* model, int32_t arm, const double* x,
                             const double* z, double reward) {
  return guarded([&] {
    need(model, "model");
    need(x, "x");
    const auto& cfg = model->model.config();
    in_range(arm, cfg.arm_count, "arm");
    const auto xv = vec(x, cfg.dimension);
    if (cfg.hybrid()) {
      need(z, "z");
      const auto zv = vec(z, cfg.shared_dimension);
      model->model.update(arm, xv, &zv, reward);
    } else {
      model->model.update(arm, xv, nullptr, reward);
    }
  });
}

evc_status evc_linucb_snapshot(const evc_linucb* model, char** out) {
  return guarded([&] {
    need(model, "model");
    need(out, "out");
    std::ostringstream s;
    model->model.save(s);
    *out = dup_string(s.str());
  });
}

evc_status evc_linucb_restore(const char* snapshot, evc_linucb** out) {
  return guarded([&] {
    need(snapshot, "snapshot");
    need(out, "out");
    std::istringstream s(snapshot);
    *out = new evc_linucb{evcharge::LinUcb::load(s)};
  });
}

void evc_linucb_free(evc_linucb* model) { delete model; }

evc_status evc_qlearner_create(int32_t actions, double learning_rate, double discount,
                               double epsilon, double initial_value, evc_qlearner** out) {
  return guarded([&] {
    need(out, "out");
    evcharge::QLearnerConfig cfg{learning_rate, discount, epsilon, initial_value};
    if (actions < 1) throw evcharge::ConfigError("Q-learner: need at least one action");
    as_config([&] { cfg.validate(); });
    *out = new evc_qlearner{cfg, evcharge::QTable(actions, initial_value)};
  });
}

evc_status evc_qlearner_value(const evc_qlearner* q, int32_t state, int32_t action,
                              double* out) {
  return guarded([&] {
    need(q, "learner");
    need(out, "out");
    in_range(action, q->table.action_count(), "action");
    *out = q->table.value(state, action);
  });
}

evc_status evc_qlearner_update(evc_qlearner* q, int32_t state, int32_t action,
                               double reward, int32_t next_state) {
  return guarded([&] {
    need(q, "learner");
    in_range(action, q->table.action_count(), "action");
    evcharge::q_update(q->table, q->config, state, action, reward, next_state);
  });
}

evc_status evc_qlearner_select(const evc_qlearner* q, int32_t state, const int32_t* valid,
                               size_t valid_count, evc_rng* rng, int32_t* out) {
  return guarded([&] {
    need(q, "learner");
    need(rng, "rng");
    need(out, "out");
    const auto v = valid_list(valid, valid_count, q->table.action_count());
    *out = evcharge::epsilon_greedy_select(q->table, q->config, state, v, rng->rng);
  });
}

evc_status evc_qlearner_snapshot(const evc_qlearner* q, char** out) {
  return guarded([&] {
    need(q, "learner");
    need(out, "out");
    std::ostringstream s;
    q->table.save(s);
    *out = dup_string(s.str());
  });
}

void evc_qlearner_free(evc_qlearner* q) { delete q; }

}  // extern "C"
