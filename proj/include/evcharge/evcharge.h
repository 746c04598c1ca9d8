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

#ifndef EVCHARGE_EVCHARGE_H_
#define EVCHARGE_EVCHARGE_H_

/* C interface of the evcharge library. Every function returns an
 * evc_status; on failure evc_last_error() describes the problem (per
 * thread, valid until the next call on that thread). Handles are opaque
 * and owned by the caller; release them with the matching _free. Strings
 * returned through char** are released with evc_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(EVC_BUILDING_LIBRARY)
#define EVC_API __declspec(dllexport)
#else
#define EVC_API __declspec(dllimport)
#endif
#else
#define EVC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum evc_status {
  EVC_OK = 0,
  EVC_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad index, bad size */
  EVC_ERR_CONFIG = 2,           /* malformed or inconsistent configuration */
  EVC_ERR_IO = 3,               /* file could not be read or written */
  EVC_ERR_CONTRACT = 4,         /* precondition or invariant violated */
  EVC_ERR_RUN = 5,              /* one or more sweep jobs failed */
  EVC_ERR_INTERNAL = 6
} evc_status;

typedef struct evc_scenario evc_scenario;
typedef struct evc_metrics evc_metrics;
typedef struct evc_linucb evc_linucb;
typedef struct evc_qlearner evc_qlearner;
typedef struct evc_rng evc_rng;

EVC_API const char* evc_version(void);
EVC_API const char* evc_last_error(void);
EVC_API const char* evc_status_name(evc_status status);
EVC_API void evc_string_free(char* s);

/* ---- scenarios ---- */

EVC_API evc_status evc_scenario_load(const char* path, evc_scenario** out);
/* base_dir resolves relative paths inside the document; may be NULL. */
EVC_API evc_status evc_scenario_from_json(const char* json, const char* base_dir,
                                          evc_scenario** out);

typedef struct evc_desk_options {
  uint64_t seed;
  int32_t substations;
  int32_t stations;
  int32_t vehicles;
  int32_t days;
  int32_t spaces;
  double rated_kw;
  double base_peak;
  double home_skew;
} evc_desk_options;

EVC_API void evc_desk_options_default(evc_desk_options* options);
/* Synthetic desk city with ConstantLoading agents and AlwaysLoad vehicles;
 * change the rest with evc_scenario_set_param. */
EVC_API evc_status evc_scenario_desk(const evc_desk_options* options,
                                     evc_scenario** out);
/* Replaces one value, e.g. ("agents.profile", "\"LinUCB_Disjunct\"") or
 * ("seed", "7"). The value is a JSON literal. */
EVC_API evc_status evc_scenario_set_param(evc_scenario* scenario, const char* key,
                                          const char* value_json);
EVC_API evc_status evc_scenario_to_json(const evc_scenario* scenario, char** out);
EVC_API evc_status evc_scenario_write(const evc_scenario* scenario, const char* path);
EVC_API void evc_scenario_free(evc_scenario* scenario);

/* ---- runs and metrics ---- */

typedef struct evc_run_options {
  int32_t audit; /* nonzero: check invariants every step */
} evc_run_options;

/* options may be NULL. */
EVC_API evc_status evc_run(const evc_scenario* scenario,
                           const evc_run_options* options, evc_metrics** out);

typedef struct evc_summary {
  double global_max_loading;
  double mean_daily_mean_loading;
  int32_t overloaded_substations;
  int32_t day_count;
  int64_t overload_windows;
  int64_t arrivals;
  int64_t arrivals_with_capacity;
  int64_t decisions;
  int64_t sessions;
  int64_t diversions;
  int64_t rewards;
} evc_summary;

EVC_API evc_status evc_metrics_summary(const evc_metrics* metrics, evc_summary* out);
/* Mean reward of decisions taken on `day` (0-based); NaN if there were none.
 * Days outside the run give EVC_ERR_INVALID_ARGUMENT. */
EVC_API evc_status evc_metrics_daily_reward(const evc_metrics* metrics, int32_t day,
                                            double* out);
EVC_API evc_status evc_metrics_save(const evc_metrics* metrics, const char* path);
EVC_API evc_status evc_metrics_load(const char* path, evc_metrics** out);
EVC_API void evc_metrics_free(evc_metrics* metrics);

/* CSV report files into dir (created if missing). */
EVC_API evc_status evc_report(const evc_metrics* metrics, const char* dir);
/* scenario.json, metrics.json and the report into dir. */
EVC_API evc_status evc_write_run(const evc_scenario* scenario,
                                 const evc_metrics* metrics, const char* dir);

/* Runs `count` scenarios, up to `parallelism` at once, each into its own
 * directory. Returns EVC_ERR_RUN if any job failed; *failed (may be NULL)
 * receives the number of failures and evc_last_error lists them. */
EVC_API evc_status evc_sweep(const evc_scenario* const* scenarios,
                             const char* const* out_dirs, size_t count,
                             int32_t parallelism, evc_run_options const* options,
                             size_t* failed);

/* ---- tours ---- */

typedef struct evc_tours_stats {
  int64_t trips;
  int64_t edges;
  int64_t tours;
  int64_t trips_in_tours;
} evc_tours_stats;

EVC_API evc_status evc_tours_extract(const char* trips_path, const char* tours_path,
                                     int32_t min_len, int32_t max_len,
                                     evc_tours_stats* stats);

/* ---- learners ---- */

EVC_API evc_status evc_rng_create(uint64_t seed, const char* stream, evc_rng** out);
EVC_API evc_status evc_rng_uniform(evc_rng* rng, double* out);
EVC_API evc_status evc_rng_normal(evc_rng* rng, double* out);
EVC_API void evc_rng_free(evc_rng* rng);

/* shared_dimension 0 selects the disjoint model. */
EVC_API evc_status evc_linucb_create(double alpha, int32_t dimension,
                                     int32_t shared_dimension, int32_t arms,
                                     evc_linucb** out);
/* z is ignored (may be NULL) for the disjoint model. */
EVC_API evc_status evc_linucb_predict(const evc_linucb* model, int32_t arm,
                                      const double* x, const double* z, double* out);
/* valid == NULL means every arm. */
EVC_API evc_status evc_linucb_select(const evc_linucb* model, const double* x,
                                     const double* z, const int32_t* valid,
                                     size_t valid_count, evc_rng* rng, int32_t* out);
EVC_API evc_status evc_linucb_update(evc_linucb* model, int32_t arm, const double* x,
                                     const double* z, double reward);
EVC_API evc_status evc_linucb_snapshot(const evc_linucb* model, char** out);
EVC_API evc_status evc_linucb_restore(const char* snapshot, evc_linucb** out);
EVC_API void evc_linucb_free(evc_linucb* model);

EVC_API evc_status evc_qlearner_create(int32_t actions, double learning_rate,
                                       double discount, double epsilon,
                                       double initial_value, evc_qlearner** out);
EVC_API evc_status evc_qlearner_value(const evc_qlearner* q, int32_t state,
                                      int32_t action, double* out);
EVC_API evc_status evc_qlearner_update(evc_qlearner* q, int32_t state, int32_t action,
                                       double reward, int32_t next_state);
EVC_API evc_status evc_qlearner_select(const evc_qlearner* q, int32_t state,
                                       const int32_t* valid, size_t valid_count,
                                       evc_rng* rng, int32_t* out);
EVC_API evc_status evc_qlearner_snapshot(const evc_qlearner* q, char** out);
EVC_API void evc_qlearner_free(evc_qlearner* q);

#ifdef __cplusplus
}
#endif

#endif /* EVCHARGE_EVCHARGE_H_ */
