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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ridepool/config.hpp"
#include "ridepool/metrics.hpp"
#include "ridepool/simulation.hpp"

namespace ridepool {

enum class SweepAxis : std::uint8_t { SearchLevel, FleetSize, Share, Flexibility };

std::optional<SweepAxis> sweep_axis_from(const std::string& name);
const char* to_string(SweepAxis axis);

// Sets the axis value on a config. "centralized" is a valid search level and
// selects the centralized dispatcher; numeric levels select distributed.
void apply_axis(ScenarioConfig& cfg, SweepAxis axis, const std::string& value);

struct SweepCell {
  std::size_t value_index = 0;
  int seed_index = 0;
  ScenarioConfig config;
  IndicatorSet indicators;
  SimCounters counters;
  std::vector<EpochRecord> epochs;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::FleetSize;
  std::vector<std::string> values;
  int seeds = 0;
  std::vector<SweepCell> cells;  // ordered by (value, seed)
};

// values x seeds cells; seed i uses base.seed + i. Cells run on `jobs`
// threads; the result does not depend on it. A failing cell aborts the sweep
// with its config in the message.
SweepResult run_sweep(const ScenarioConfig& base, SweepAxis axis,
                      std::span<const std::string> values, int seeds, int jobs);

inline constexpr const char* kSummaryHeader =
    "scenario,mode,search_level,fleet_size,share,flexibility_s,seed,SR,VKT_km,DT_min,WT_min,"
    "TTT_min,TS_kmh,NoA,compute_max_s,compute_mean_s";

std::string summary_row(const ScenarioConfig& cfg, const IndicatorSet& ind);
std::string epochs_header();
std::string epoch_row(const ScenarioConfig& cfg, const EpochRecord& e);

// summary.csv, epochs.csv and events.jsonl for one run.
void write_run_outputs(const ScenarioResult& result, const std::filesystem::path& dir);
// summary.csv, epochs.csv, aggregate.csv and one SVG per indicator.
void emit_outputs(const SweepResult& result, const std::filesystem::path& dir);

/// Mean and sample standard deviation per cell group.
struct AggregateRow {
  std::string label;
  std::size_t runs = 0;
  std::vector<std::optional<double>> mean;  // per indicator column
  std::vector<std::optional<double>> stddev;
};

struct Aggregate {
  std::string axis;
  std::vector<std::string> columns;  // indicator names
  std::vector<AggregateRow> rows;
};

// Groups summary rows by everything but the seed, in order of first
// appearance; the axis is the first configuration column that varies.
Aggregate aggregate_summary(const std::string& summary_csv);
std::string format_aggregate(const Aggregate& agg);

// Re-reads summary.csv in `dir`, rewrites aggregate.csv and the plots, and
// returns a printable table.
std::string report(const std::filesystem::path& dir);

}  // namespace ridepool
