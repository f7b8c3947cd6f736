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

#include "ridepool/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ridepool/error.hpp"

namespace ridepool {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || !std::isfinite(out))
    throw ValidationError(key + ": expected a number, got '" + v + "'");
  return out;
}

template <typename Int>
Int to_int(const std::string& key, const std::string& v) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ValidationError(key + ": expected an integer, got '" + v + "'");
  return out;
}

bool to_switch(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ValidationError(key + ": expected on|off, got '" + v + "'");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

const char* to_string(DispatchMode mode) {
  return mode == DispatchMode::Centralized ? "centralized" : "distributed";
}

void apply_setting(ScenarioConfig& c, const std::string& key, const std::string& value) {
  const std::string& v = value;
  if (key == "scenario") {
    if (v.empty() || v.find_first_of(",\"\n") != std::string::npos)
      throw ValidationError("scenario: name must be non-empty without commas or quotes");
    c.scenario = v;
  } else if (key == "network") {
    c.network = v;
  } else if (key == "grid_rows") {
    c.grid_rows = to_int<int>(key, v);
  } else if (key == "grid_cols") {
    c.grid_cols = to_int<int>(key, v);
  } else if (key == "grid_cell_m") {
    c.grid_cell_m = to_double(key, v);
  } else if (key == "grid_speed_mps") {
    c.grid_speed_mps = to_double(key, v);
  } else if (key == "grid_jam_vpm") {
    c.grid_jam_vpm = to_double(key, v);
  } else if (key == "demand") {
    c.demand = v;
  } else if (key == "demand_total") {
    c.demand_total = to_double(key, v);
  } else if (key == "share") {
    c.share = to_double(key, v);
  } else if (key == "flexibility_s" || key == "flexibility") {
    c.flexibility_s = to_double(key, v);
  } else if (key == "fleet_size") {
    c.fleet_size = to_int<int>(key, v);
  } else if (key == "seed") {
    c.seed = to_int<std::uint64_t>(key, v);
  } else if (key == "delta_s") {
    c.delta_s = to_double(key, v);
  } else if (key == "tick_s") {
    c.tick_s = to_double(key, v);
  } else if (key == "capacity") {
    c.capacity = to_int<int>(key, v);
  } else if (key == "alpha") {
    c.dispatch.score.alpha = to_double(key, v);
  } else if (key == "beta") {
    c.dispatch.score.beta = to_double(key, v);
  } else if (key == "psi_time_unit_s") {
    c.dispatch.score.time_unit_s = to_double(key, v);
  } else if (key == "mode") {
    if (v == "centralized") {
      c.dispatch.mode = DispatchMode::Centralized;
    } else if (v == "distributed") {
      c.dispatch.mode = DispatchMode::Distributed;
    } else {
      throw ValidationError("mode: expected centralized|distributed, got '" + v + "'");
    }
  } else if (key == "search_level") {
    // A sweep over search levels lists the centralized reference as a level.
    if (v == "centralized") {
      c.dispatch.mode = DispatchMode::Centralized;
    } else {
      c.dispatch.search_level = to_int<int>(key, v);
    }
  } else if (key == "singleton_assign") {
    c.dispatch.singleton_assign = to_switch(key, v);
  } else if (key == "min_vtts_s") {
    if (v == "none" || v.empty()) {
      c.dispatch.min_vtts_s.reset();
    } else {
      c.dispatch.min_vtts_s = to_double(key, v);
    }
  } else if (key == "load_period_s") {
    c.load_period_s = to_double(key, v);
  } else if (key == "background_traffic") {
    c.background_traffic = to_switch(key, v);
  } else if (key == "v_min_mps") {
    c.v_min_mps = to_double(key, v);
  } else if (key == "max_sim_s") {
    c.max_sim_s = to_double(key, v);
  } else if (key == "out_dir") {
    c.out_dir = v;
  } else if (key == "timing") {
    if (v == "wall") {
      c.timing = true;
    } else if (v == "off") {
      c.timing = false;
    } else {
      throw ValidationError("timing: expected wall|off, got '" + v + "'");
    }
  } else if (key == "log_messages") {
    c.dispatch.log_messages = to_switch(key, v);
  } else if (key == "threads") {
    c.dispatch.threads = to_int<int>(key, v);
  } else if (key == "jobs") {
    c.jobs = to_int<int>(key, v);
  } else {
    throw ValidationError("unknown config key '" + key + "'");
  }
}

void ScenarioConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ValidationError(what);
  };
  if (network.empty()) {
    require(grid_rows >= 1 && grid_cols >= 1, "grid_rows and grid_cols must be >= 1");
    require(grid_rows * grid_cols >= 2, "grid needs at least two nodes");
    require(grid_cell_m > 0 && grid_speed_mps > 0 && grid_jam_vpm > 0,
            "grid_cell_m, grid_speed_mps and grid_jam_vpm must be positive");
  }
  if (demand.empty()) require(demand_total >= 0, "demand_total must be >= 0");
  require(share >= 0 && share <= 1, "share must lie in [0, 1]");
  require(flexibility_s >= 0, "flexibility_s must be >= 0");
  require(fleet_size >= 0, "fleet_size must be >= 0");
  require(capacity == kSharedCapacity, "capacity must be 2");
  require(tick_s > 0, "tick_s must be positive");
  require(delta_s >= tick_s, "delta_s must be >= tick_s");
  const double ratio = delta_s / tick_s;
  require(std::abs(ratio - std::round(ratio)) < 1e-9, "delta_s must be a multiple of tick_s");
  require(load_period_s > 0, "load_period_s must be positive");
  require(v_min_mps > 0, "v_min_mps must be positive");
  require(max_sim_s >= load_period_s, "max_sim_s must cover the load period");
  require(dispatch.search_level >= 0 && dispatch.search_level <= kMaxSearchLevel,
          "search_level must lie in 0..3");
  require(dispatch.threads >= 1, "threads must be >= 1");
  require(jobs >= 1, "jobs must be >= 1");
  dispatch.score.validate();
}

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig c;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", number);
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", number);
    try {
      apply_setting(c, key, trim(line.substr(eq + 1)));
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), number);
    }
  }
  return c;
}

ScenarioConfig parse_config(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  ScenarioConfig c = parse_config(in);
  const auto base = path.parent_path();
  if (!c.network.empty() && c.network.is_relative()) c.network = base / c.network;
  if (!c.demand.empty() && c.demand.is_relative()) c.demand = base / c.demand;
  return c;
}

std::string to_text(const ScenarioConfig& c) {
  std::ostringstream os;
  auto kv = [&](const char* k, const std::string& v) { os << k << " = " << v << '\n'; };
  auto sw = [](bool b) { return std::string(b ? "on" : "off"); };
  kv("scenario", c.scenario);
  if (!c.network.empty()) kv("network", c.network.string());
  kv("grid_rows", std::to_string(c.grid_rows));
  kv("grid_cols", std::to_string(c.grid_cols));
  kv("grid_cell_m", fmt(c.grid_cell_m));
  kv("grid_speed_mps", fmt(c.grid_speed_mps));
  kv("grid_jam_vpm", fmt(c.grid_jam_vpm));
  if (!c.demand.empty()) kv("demand", c.demand.string());
  kv("demand_total", fmt(c.demand_total));
  kv("share", fmt(c.share));
  kv("flexibility_s", fmt(c.flexibility_s));
  kv("fleet_size", std::to_string(c.fleet_size));
  kv("seed", std::to_string(c.seed));
  kv("delta_s", fmt(c.delta_s));
  kv("tick_s", fmt(c.tick_s));
  kv("capacity", std::to_string(c.capacity));
  kv("alpha", fmt(c.dispatch.score.alpha));
  kv("beta", fmt(c.dispatch.score.beta));
  kv("psi_time_unit_s", fmt(c.dispatch.score.time_unit_s));
  kv("search_level", std::to_string(c.dispatch.search_level));
  kv("mode", to_string(c.dispatch.mode));
  kv("singleton_assign", sw(c.dispatch.singleton_assign));
  kv("min_vtts_s", c.dispatch.min_vtts_s ? fmt(*c.dispatch.min_vtts_s) : "none");
  kv("load_period_s", fmt(c.load_period_s));
  kv("background_traffic", sw(c.background_traffic));
  kv("v_min_mps", fmt(c.v_min_mps));
  kv("max_sim_s", fmt(c.max_sim_s));
  kv("out_dir", c.out_dir.string());
  kv("timing", c.timing ? "wall" : "off");
  kv("log_messages", sw(c.dispatch.log_messages));
  kv("threads", std::to_string(c.dispatch.threads));
  kv("jobs", std::to_string(c.jobs));
  return os.str();
}

}  // namespace ridepool
