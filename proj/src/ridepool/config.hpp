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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "ridepool/dispatch.hpp"

namespace ridepool {

/// Everything a scenario run needs. Text form is flat `key = value` lines;
/// `#` starts a comment.
struct ScenarioConfig {
  std::string scenario = "grid";

  // Network: a file, or a generated grid when `network` is empty.
  std::filesystem::path network;
  int grid_rows = 10;
  int grid_cols = 10;
  double grid_cell_m = 400.0;
  double grid_speed_mps = 10.0;
  double grid_jam_vpm = 0.125;

  // Demand: an OD file, or `demand_total` trips spread uniformly.
  std::filesystem::path demand;
  double demand_total = 1000.0;

  double share = 0.2;
  double flexibility_s = 300.0;
  int fleet_size = 30;
  std::uint64_t seed = 1;
  double delta_s = 60.0;
  double tick_s = 1.0;
  int capacity = 2;
  double load_period_s = 900.0;
  bool background_traffic = true;
  double v_min_mps = 1.0;
  double max_sim_s = 6.0 * 3600.0;

  DispatchConfig dispatch;

  std::filesystem::path out_dir = "out";
  bool timing = true;  // off: compute-time columns are written as 0
  int jobs = 1;        // parallel sweep cells

  // Throws ValidationError on the first violated invariant.
  void validate() const;
};

// Sets one key from its text value. Throws ValidationError for unknown keys
// and malformed values.
void apply_setting(ScenarioConfig& cfg, const std::string& key, const std::string& value);

ScenarioConfig parse_config(std::istream& in);
ScenarioConfig parse_config(const std::string& text);
// Relative `network` and `demand` paths resolve against the file's directory.
ScenarioConfig load_config(const std::filesystem::path& path);

// Canonical text form; parse_config(to_text(c)) reproduces c.
std::string to_text(const ScenarioConfig& cfg);

const char* to_string(DispatchMode mode);

}  // namespace ridepool
