// Copyright 2026 The ridepool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ridepool/ridepool.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "ridepool/assignment.hpp"
#include "ridepool/config.hpp"
#include "ridepool/error.hpp"
#include "ridepool/events.hpp"
#include "ridepool/metrics.hpp"
#include "ridepool/pairing.hpp"
#include "ridepool/road_network.hpp"
#include "ridepool/simulation.hpp"
#include "ridepool/sweep.hpp"

struct rp_network {
  ridepool::RoadNetwork net;
};
struct rp_config {
  ridepool::ScenarioConfig cfg;
};
struct rp_result {
  ridepool::ScenarioResult result;
};
struct rp_sweep {
  ridepool::SweepResult result;
};

namespace {

thread_local std::string tl_error;

rp_status fail(rp_status status, const std::string& msg) {
  tl_error = msg;
  return status;
}

rp_status null_arg(const char* name) {
  return fail(RP_ERR_NULL_ARGUMENT, std::string("null pointer: ") + name);
}

// Maps the core's exceptions onto status codes.
template <typename F>
rp_status guarded(F&& body) {
  try {
    body();
    return RP_OK;
  } catch (const ridepool::ParseError& e) {
    return fail(RP_ERR_PARSE, e.what());
  } catch (const ridepool::ValidationError& e) {
    return fail(RP_ERR_VALIDATION, e.what());
  } catch (const ridepool::IoError& e) {
    return fail(RP_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RP_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

rp_indicators to_c(const ridepool::IndicatorSet& s) {
  rp_indicators o{};
  o.sr_pct = s.sr_pct;
  o.vkt_km = s.vkt_km;
  o.has_dt = s.dt_min.has_value();
  o.dt_min = s.dt_min.value_or(0.0);
  o.has_wt = s.wt_min.has_value();
  o.wt_min = s.wt_min.value_or(0.0);
  o.ttt_min = s.ttt_min;
  o.ts_kmh = s.ts_kmh;
  o.noa = s.noa;
  o.compute_max_s = s.compute_max_s;
  o.compute_mean_s = s.compute_mean_s;
  o.requests = s.requests;
  o.served = s.served;
  o.expired = s.expired;
  o.assignments = s.assignments;
  return o;
}

}  // namespace

extern "C" {

const char* rp_last_error(void) { return tl_error.c_str(); }

const char* rp_version(void) { return "0.1.0"; }

void rp_string_free(char* s) { std::free(s); }

rp_status rp_network_grid(int32_t rows, int32_t cols, double cell_m, double speed_mps,
                          double jam_vpm, rp_network** out) {
  if (out == nullptr) return null_arg("out");
  if (rows < 1 || cols < 1) return fail(RP_ERR_INVALID_ARGUMENT, "rows and cols must be >= 1");
  return guarded([&] {
    auto* h = new rp_network{ridepool::make_grid({rows, cols, cell_m, speed_mps, jam_vpm})};
    *out = h;
  });
}

rp_status rp_network_load(const char* path, rp_network** out) {
  if (path == nullptr) return null_arg("path");
  if (out == nullptr) return null_arg("out");
  return guarded([&] { *out = new rp_network{ridepool::load_network(path)}; });
}

rp_status rp_network_parse(const char* text, rp_network** out) {
  if (text == nullptr) return null_arg("text");
  if (out == nullptr) return null_arg("out");
  return guarded([&] { *out = new rp_network{ridepool::parse_network(std::string(text))}; });
}

rp_status rp_network_to_text(const rp_network* net, char** out) {
  if (net == nullptr) return null_arg("net");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    std::ostringstream os;
    ridepool::write_network(os, net->net);
    *out = dup_string(os.str());
  });
}

rp_status rp_network_counts(const rp_network* net, size_t* nodes, size_t* links) {
  if (net == nullptr) return null_arg("net");
  if (nodes != nullptr) *nodes = net->net.node_count();
  if (links != nullptr) *links = net->net.link_count();
  return RP_OK;
}

void rp_network_free(rp_network* net) { delete net; }

rp_status rp_pair_score(double origin_distance_s, double destination_distance_s, double alpha,
                        double beta, double time_unit_s, double* out) {
  if (out == nullptr) return null_arg("out");
  if (!(origin_distance_s >= 0) || !(destination_distance_s >= 0))
    return fail(RP_ERR_INVALID_ARGUMENT, "distances must be non-negative");
  return guarded([&] {
    ridepool::PairScoreConfig cfg{alpha, beta, time_unit_s};
    cfg.validate();
    *out = ridepool::psi(origin_distance_s, destination_distance_s, cfg);
  });
}

rp_status rp_solve_assignment(size_t rows, size_t cols, const double* weights,
                              const unsigned char* present, int cardinality_first,
                              int64_t* out_cols, double* out_total) {
  if (rows > 0 && cols > 0 && weights == nullptr) return null_arg("weights");
  if (rows > 0 && out_cols == nullptr) return null_arg("out_cols");
  return guarded([&] {
    ridepool::WeightMatrix w(rows, cols);
    for (size_t r = 0; r < rows; ++r)
      for (size_t c = 0; c < cols; ++c)
        if (present == nullptr || present[r * cols + c] != 0) w.set(r, c, weights[r * cols + c]);
    const auto m = ridepool::solve_assignment(
        w, cardinality_first ? ridepool::AssignmentObjective::MaxCardinalityThenWeight
                             : ridepool::AssignmentObjective::MaxWeight);
    for (size_t r = 0; r < rows; ++r) out_cols[r] = -1;
    for (auto [r, c] : m.pairs) out_cols[r] = static_cast<int64_t>(c);
    if (out_total != nullptr) *out_total = m.total;
  });
}

rp_status rp_config_new(rp_config** out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] { *out = new rp_config{}; });
}

rp_status rp_config_load(const char* path, rp_config** out) {
  if (path == nullptr) return null_arg("path");
  if (out == nullptr) return null_arg("out");
  return guarded([&] { *out = new rp_config{ridepool::load_config(path)}; });
}

rp_status rp_config_parse(const char* text, rp_config** out) {
  if (text == nullptr) return null_arg("text");
  if (out == nullptr) return null_arg("out");
  return guarded([&] { *out = new rp_config{ridepool::parse_config(std::string(text))}; });
}

rp_status rp_config_set(rp_config* cfg, const char* key, const char* value) {
  if (cfg == nullptr) return null_arg("cfg");
  if (key == nullptr) return null_arg("key");
  if (value == nullptr) return null_arg("value");
  return guarded([&] { ridepool::apply_setting(cfg->cfg, key, value); });
}

rp_status rp_config_validate(const rp_config* cfg) {
  if (cfg == nullptr) return null_arg("cfg");
  return guarded([&] { cfg->cfg.validate(); });
}

rp_status rp_config_to_text(const rp_config* cfg, char** out) {
  if (cfg == nullptr) return null_arg("cfg");
  if (out == nullptr) return null_arg("out");
  return guarded([&] { *out = dup_string(ridepool::to_text(cfg->cfg)); });
}

rp_status rp_config_get(const rp_config* cfg, const char* key, char** out) {
  if (cfg == nullptr) return null_arg("cfg");
  if (key == nullptr) return null_arg("key");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    std::istringstream in(ridepool::to_text(cfg->cfg));
    const std::string prefix = std::string(key) + " = ";
    std::string line;
    while (std::getline(in, line)) {
      if (line.rfind(prefix, 0) == 0) {
        *out = dup_string(line.substr(prefix.size()));
        return;
      }
    }
    // Optional keys that are unset have no line.
    if (std::string(key) == "network" || std::string(key) == "demand") {
      *out = dup_string("");
      return;
    }
    throw ridepool::ValidationError(std::string("unknown config key '") + key + "'");
  });
}

void rp_config_free(rp_config* cfg) { delete cfg; }

rp_status rp_run(const rp_config* cfg, rp_result** out) {
  if (cfg == nullptr) return null_arg("cfg");
  if (out == nullptr) return null_arg("out");
  return guarded([&] { *out = new rp_result{ridepool::run_scenario(cfg->cfg)}; });
}

rp_status rp_result_indicators(const rp_result* r, rp_indicators* out) {
  if (r == nullptr) return null_arg("r");
  if (out == nullptr) return null_arg("out");
  *out = to_c(r->result.indicators);
  return RP_OK;
}

rp_status rp_result_counters(const rp_result* r, rp_counters* out) {
  if (r == nullptr) return null_arg("r");
  if (out == nullptr) return null_arg("out");
  const auto& c = r->result.counters;
  rp_counters o{};
  o.requests = c.requests;
  o.served = c.served;
  o.expired = c.expired;
  o.assignments = c.assignments;
  o.commit_pickup_violations = c.commit_late_pickups;
  o.commit_dropoff_violations = c.commit_late_dropoffs;
  o.commit_capacity_violations = c.commit_capacity_violations;
  o.late_pickups = c.late_pickups;
  o.late_dropoffs = c.late_dropoffs;
  o.occupancy_violations = c.occupancy_violations;
  o.max_occupancy = c.max_occupancy;
  o.epochs = c.epochs;
  o.shared_km = c.shared_odometer_m / 1000.0;
  o.end_s = c.end_s;
  o.truncated = c.truncated ? 1 : 0;
  *out = o;
  return RP_OK;
}

rp_status rp_result_epoch_count(const rp_result* r, size_t* out) {
  if (r == nullptr) return null_arg("r");
  if (out == nullptr) return null_arg("out");
  *out = r->result.epochs.size();
  return RP_OK;
}

rp_status rp_result_epoch(const rp_result* r, size_t index, rp_epoch* out) {
  if (r == nullptr) return null_arg("r");
  if (out == nullptr) return null_arg("out");
  if (index >= r->result.epochs.size()) return fail(RP_ERR_INVALID_ARGUMENT, "epoch index out of range");
  const auto& e = r->result.epochs[index];
  rp_epoch o{};
  o.epoch = e.epoch;
  o.t_s = e.t_s;
  o.pending = static_cast<int64_t>(e.pending);
  o.candidates_central = static_cast<int64_t>(e.candidates_central);
  o.candidates_max_agent = static_cast<int64_t>(e.candidates_max_agent);
  o.active_agents = static_cast<int64_t>(e.active_agents);
  o.accepted = static_cast<int64_t>(e.accepted);
  o.rejected = static_cast<int64_t>(e.rejected);
  o.riders_assigned = static_cast<int64_t>(e.riders_assigned);
  o.compute_max_s = e.compute_max_s;
  o.compute_mean_s = e.compute_mean_s;
  *out = o;
  return RP_OK;
}

rp_status rp_result_write(const rp_result* r, const char* dir) {
  if (r == nullptr) return null_arg("r");
  if (dir == nullptr) return null_arg("dir");
  return guarded([&] { ridepool::write_run_outputs(r->result, dir); });
}

void rp_result_free(rp_result* r) { delete r; }

rp_status rp_sweep_run(const rp_config* base, const char* axis, const char* values, int32_t seeds,
                       int32_t jobs, rp_sweep** out) {
  if (base == nullptr) return null_arg("base");
  if (axis == nullptr) return null_arg("axis");
  if (values == nullptr) return null_arg("values");
  if (out == nullptr) return null_arg("out");
  const auto parsed = ridepool::sweep_axis_from(axis);
  if (!parsed) return fail(RP_ERR_INVALID_ARGUMENT, std::string("unknown sweep axis '") + axis + "'");
  return guarded([&] {
    std::vector<std::string> list;
    std::istringstream in(values);
    std::string item;
    while (std::getline(in, item, ',')) {
      const auto b = item.find_first_not_of(' ');
      const auto e = item.find_last_not_of(' ');
      if (b != std::string::npos) list.push_back(item.substr(b, e - b + 1));
    }
    *out = new rp_sweep{ridepool::run_sweep(base->cfg, *parsed, list, seeds, jobs)};
  });
}

rp_status rp_sweep_cell_count(const rp_sweep* s, size_t* out) {
  if (s == nullptr) return null_arg("s");
  if (out == nullptr) return null_arg("out");
  *out = s->result.cells.size();
  return RP_OK;
}

rp_status rp_sweep_cell(const rp_sweep* s, size_t index, rp_indicators* out) {
  if (s == nullptr) return null_arg("s");
  if (out == nullptr) return null_arg("out");
  if (index >= s->result.cells.size()) return fail(RP_ERR_INVALID_ARGUMENT, "cell index out of range");
  *out = to_c(s->result.cells[index].indicators);
  return RP_OK;
}

rp_status rp_sweep_write(const rp_sweep* s, const char* dir) {
  if (s == nullptr) return null_arg("s");
  if (dir == nullptr) return null_arg("dir");
  return guarded([&] { ridepool::emit_outputs(s->result, dir); });
}

void rp_sweep_free(rp_sweep* s) { delete s; }

rp_status rp_report(const char* dir, char** out) {
  if (dir == nullptr) return null_arg("dir");
  if (out == nullptr) return null_arg("out");
  return guarded([&] { *out = dup_string(ridepool::report(dir)); });
}

rp_status rp_indicators_from_log(const char* path, int32_t fleet_size, rp_indicators* out) {
  if (path == nullptr) return null_arg("path");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    const auto events = ridepool::load_events(path);
    *out = to_c(ridepool::compute_indicators(events, {fleet_size}));
  });
}

}  // extern "C"
