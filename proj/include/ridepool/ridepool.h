/*
 * Copyright 2026 The ridepool Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * ridepool C API.
 *
 * Every function returns an rp_status; on failure rp_last_error() holds a
 * message for the calling thread until its next failing call. Objects are
 * opaque and released with their matching *_free function (NULL is allowed).
 * Strings returned through char** are released with rp_string_free.
 */

#ifndef RIDEPOOL_RIDEPOOL_H_
#define RIDEPOOL_RIDEPOOL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(RIDEPOOL_BUILDING_LIBRARY)
#define RP_API __attribute__((visibility("default")))
#else
#define RP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rp_status {
  RP_OK = 0,
  RP_ERR_NULL_ARGUMENT = 1,
  RP_ERR_INVALID_ARGUMENT = 2,
  RP_ERR_PARSE = 3,
  RP_ERR_VALIDATION = 4,
  RP_ERR_IO = 5,
  RP_ERR_INTERNAL = 6
} rp_status;

typedef struct rp_network rp_network;
typedef struct rp_config rp_config;
typedef struct rp_result rp_result;
typedef struct rp_sweep rp_sweep;

typedef struct rp_indicators {
  double sr_pct;
  double vkt_km;
  double dt_min; /* valid when has_dt */
  double wt_min; /* valid when has_wt */
  int has_dt;
  int has_wt;
  double ttt_min;
  double ts_kmh;
  double noa;
  double compute_max_s;
  double compute_mean_s;
  int64_t requests;
  int64_t served;
  int64_t expired;
  int64_t assignments;
} rp_indicators;

typedef struct rp_counters {
  int64_t requests;
  int64_t served;
  int64_t expired;
  int64_t assignments;
  int64_t commit_pickup_violations;
  int64_t commit_dropoff_violations;
  int64_t commit_capacity_violations;
  int64_t late_pickups;
  int64_t late_dropoffs;
  int64_t occupancy_violations;
  int32_t max_occupancy;
  int32_t epochs;
  double shared_km;
  double end_s;
  int truncated;
} rp_counters;

typedef struct rp_epoch {
  int32_t epoch;
  double t_s;
  int64_t pending;
  int64_t candidates_central;
  int64_t candidates_max_agent;
  int64_t active_agents;
  int64_t accepted;
  int64_t rejected;
  int64_t riders_assigned;
  double compute_max_s;
  double compute_mean_s;
} rp_epoch;

RP_API const char* rp_last_error(void);
RP_API const char* rp_version(void);
RP_API void rp_string_free(char* s);

/* Road network. */
RP_API rp_status rp_network_grid(int32_t rows, int32_t cols, double cell_m, double speed_mps,
                                 double jam_vpm, rp_network** out);
RP_API rp_status rp_network_load(const char* path, rp_network** out);
RP_API rp_status rp_network_parse(const char* text, rp_network** out);
RP_API rp_status rp_network_to_text(const rp_network* net, char** out);
RP_API rp_status rp_network_counts(const rp_network* net, size_t* nodes, size_t* links);
RP_API void rp_network_free(rp_network* net);

/* Matcher primitives. */
RP_API rp_status rp_pair_score(double origin_distance_s, double destination_distance_s,
                               double alpha, double beta, double time_unit_s, double* out);
/* weights: rows*cols row-major; present: same shape, non-zero where a cell
 * may be chosen (NULL means all present). Maximizes the total weight, or the
 * number of assignments first when cardinality_first is non-zero.
 * out_cols[r] receives the assigned column or -1. */
RP_API rp_status rp_solve_assignment(size_t rows, size_t cols, const double* weights,
                                     const unsigned char* present, int cardinality_first,
                                     int64_t* out_cols, double* out_total);

/* Scenario configuration. */
RP_API rp_status rp_config_new(rp_config** out);
RP_API rp_status rp_config_load(const char* path, rp_config** out);
RP_API rp_status rp_config_parse(const char* text, rp_config** out);
RP_API rp_status rp_config_set(rp_config* cfg, const char* key, const char* value);
RP_API rp_status rp_config_validate(const rp_config* cfg);
RP_API rp_status rp_config_to_text(const rp_config* cfg, char** out);
/* Current value of one key in its canonical text form. */
RP_API rp_status rp_config_get(const rp_config* cfg, const char* key, char** out);
RP_API void rp_config_free(rp_config* cfg);

/* Single scenario run. */
RP_API rp_status rp_run(const rp_config* cfg, rp_result** out);
RP_API rp_status rp_result_indicators(const rp_result* r, rp_indicators* out);
RP_API rp_status rp_result_counters(const rp_result* r, rp_counters* out);
RP_API rp_status rp_result_epoch_count(const rp_result* r, size_t* out);
RP_API rp_status rp_result_epoch(const rp_result* r, size_t index, rp_epoch* out);
/* Writes summary.csv, epochs.csv and events.jsonl. */
RP_API rp_status rp_result_write(const rp_result* r, const char* dir);
RP_API void rp_result_free(rp_result* r);

/* Parameter sweep: values x seeds cells. values is comma separated. */
RP_API rp_status rp_sweep_run(const rp_config* base, const char* axis, const char* values,
                              int32_t seeds, int32_t jobs, rp_sweep** out);
RP_API rp_status rp_sweep_cell_count(const rp_sweep* s, size_t* out);
RP_API rp_status rp_sweep_cell(const rp_sweep* s, size_t index, rp_indicators* out);
/* Writes summary.csv, epochs.csv, aggregate.csv and SVG plots. */
RP_API rp_status rp_sweep_write(const rp_sweep* s, const char* dir);
RP_API void rp_sweep_free(rp_sweep* s);

/* Re-aggregates an output directory; returns a printable table. */
RP_API rp_status rp_report(const char* dir, char** out);

/* Indicators recomputed from an events.jsonl file. */
RP_API rp_status rp_indicators_from_log(const char* path, int32_t fleet_size, rp_indicators* out);

#ifdef __cplusplus
}
#endif

#endif /* RIDEPOOL_RIDEPOOL_H_ */
