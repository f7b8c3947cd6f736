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
#include <optional>
#include <span>

#include "ridepool/events.hpp"

namespace ridepool {

/// Scenario indicators. WT and DT are absent when nobody was served.
struct IndicatorSet {
  double sr_pct = 0.0;       // served / shared requests * 100
  double vkt_km = 0.0;       // shared-vehicle km per fleet vehicle
  std::optional<double> dt_min;  // mean in-vehicle time minus direct time
  std::optional<double> wt_min;  // mean pickup minus request
  double ttt_min = 0.0;      // link time per vehicle, shared and private
  double ts_kmh = 0.0;       // total distance over total driving time
  double noa = 0.0;          // rider assignments per fleet vehicle
  double compute_max_s = 0.0;   // per matching time
  double compute_mean_s = 0.0;  // per matching time

  std::int64_t requests = 0;
  std::int64_t served = 0;
  std::int64_t expired = 0;
  std::int64_t assignments = 0;
  double shared_km = 0.0;
  std::int64_t private_trips = 0;
};

struct IndicatorInputs {
  int fleet_size = 0;
};

// Pure function of the event log. Compute times are not in the log and are
// left at zero.
IndicatorSet compute_indicators(std::span<const SimEvent> events, const IndicatorInputs& in);

}  // namespace ridepool
