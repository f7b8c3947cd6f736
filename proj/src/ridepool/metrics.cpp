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

#include "ridepool/metrics.hpp"

#include <map>
#include <set>

#include "ridepool/error.hpp"

namespace ridepool {

namespace {

struct RiderLog {
  std::optional<double> request_t;
  std::optional<double> direct_s;
  std::optional<double> pickup_t;
  std::optional<double> dropoff_t;
};

}  // namespace

IndicatorSet compute_indicators(std::span<const SimEvent> events, const IndicatorInputs& in) {
  if (in.fleet_size < 0) throw ValidationError("fleet size must be >= 0");
  IndicatorSet out;
  std::map<std::int64_t, RiderLog> riders;
  std::set<std::int64_t> private_ids;
  double total_m = 0.0, total_s = 0.0;
  for (const auto& e : events) {
    switch (e.kind) {
      case EventKind::Request:
        if (!e.user) throw ValidationError("request event without user");
        riders[*e.user].request_t = e.t;
        riders[*e.user].direct_s = e.direct_s;
        ++out.requests;
        break;
      case EventKind::Pickup:
        if (e.user) riders[*e.user].pickup_t = e.t;
        break;
      case EventKind::Dropoff:
        if (e.user) riders[*e.user].dropoff_t = e.t;
        break;
      case EventKind::Expiry:
        ++out.expired;
        break;
      case EventKind::Assignment:
        ++out.assignments;
        break;
      case EventKind::LinkExit: {
        const double d = e.dist_m.value_or(0.0);
        total_m += d;
        total_s += e.dur_s.value_or(0.0);
        if (e.private_vehicle) {
          if (e.vehicle) private_ids.insert(*e.vehicle);
        } else {
          out.shared_km += d / 1000.0;
        }
        break;
      }
      default:
        break;
    }
  }

  double wait = 0.0, detour = 0.0;
  for (const auto& [id, r] : riders) {
    if (!r.request_t || !r.pickup_t || !r.dropoff_t) continue;
    ++out.served;
    wait += *r.pickup_t - *r.request_t;
    detour += (*r.dropoff_t - *r.pickup_t) - r.direct_s.value_or(0.0);
  }
  out.private_trips = static_cast<std::int64_t>(private_ids.size());
  if (out.requests > 0) out.sr_pct = 100.0 * static_cast<double>(out.served) / out.requests;
  if (out.served > 0) {
    out.wt_min = wait / out.served / 60.0;
    out.dt_min = detour / out.served / 60.0;
  }
  if (in.fleet_size > 0) {
    out.vkt_km = out.shared_km / in.fleet_size;
    out.noa = static_cast<double>(out.assignments) / in.fleet_size;
  }
  const auto vehicles = in.fleet_size + out.private_trips;
  if (vehicles > 0) out.ttt_min = total_s / static_cast<double>(vehicles) / 60.0;
  if (total_s > 0) out.ts_kmh = (total_m / 1000.0) / (total_s / 3600.0);
  return out;
}

}  // namespace ridepool
