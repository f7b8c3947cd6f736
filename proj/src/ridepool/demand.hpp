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
#include <span>
#include <string>
#include <vector>

#include "ridepool/fleet.hpp"
#include "ridepool/road_network.hpp"

namespace ridepool {

enum class RiderStatus : std::uint8_t { Pending, Finalized, Expired };

/// A shared-ride request. Time windows are fixed at creation:
///   earliest = request time, latest departure = earliest + flexibility,
///   latest arrival = latest departure + direct time.
struct Rider {
  UserId id = 0;
  NodeIndex origin = 0;
  NodeIndex destination = 0;
  double request_time_s = 0.0;
  double earliest_departure_s = 0.0;
  double latest_departure_s = 0.0;
  double latest_arrival_s = 0.0;
  double flexibility_s = 0.0;
  double direct_time_s = 0.0;  // estimate frozen at request time
  RiderStatus status = RiderStatus::Pending;
};

// One line of an OD demand file: `OD from to t_start_s t_end_s expected_count`.
struct OdEntry {
  NodeId from = 0;
  NodeId to = 0;
  double t_start_s = 0.0;
  double t_end_s = 0.0;
  double expected = 0.0;
};

struct OdSpec {
  std::vector<OdEntry> entries;
};

OdSpec parse_od(std::istream& in);
OdSpec parse_od(const std::string& text);
OdSpec load_od(const std::filesystem::path& path);
void write_od(std::ostream& out, const OdSpec& spec);

// Spreads `total` expected trips evenly over every ordered pair of distinct
// nodes across [0, load_period_s).
OdSpec uniform_od(const RoadNetwork& net, double total, double load_period_s);

// A generated trip. Shared trips become riders; the rest are background
// single-occupancy private vehicles.
struct Trip {
  NodeIndex origin = 0;
  NodeIndex destination = 0;
  double time_s = 0.0;
  bool shared = false;
};

inline constexpr double kDemandBucketS = 300.0;

// Poisson counts per OD entry and 5-minute bucket with uniform arrival
// instants inside the bucket, clipped to [0, load_period_s). Each trip is
// independently flagged shared with probability `share`. Sorted by time;
// deterministic in `seed`.
std::vector<Trip> generate_demand(const RoadNetwork& net, const OdSpec& od, double load_period_s,
                                  double share, std::uint64_t seed);

struct TimeWindows {
  double latest_departure_s = 0.0;
  double latest_arrival_s = 0.0;
};

// q = e + f and l = q + T(origin, destination). nullopt when the destination
// is unreachable (the request is rejected).
std::optional<TimeWindows> derive_time_windows(double earliest_departure_s, double flexibility_s,
                                               double direct_time_s);

// Builds the rider record, or nullopt when its destination is unreachable.
std::optional<Rider> make_rider(UserId id, const Trip& trip, double flexibility_s,
                                double direct_time_s);

// Places vehicles at origin nodes sampled in proportion to per-node shared
// request counts (uniformly over nodes when there is no shared demand).
std::vector<Vehicle> seed_fleet(const RoadNetwork& net, std::span<const Trip> demand,
                                int fleet_size, std::uint64_t seed,
                                int capacity = kSharedCapacity);

struct ExpiryResult {
  std::vector<UserId> still_pending;
  std::vector<UserId> expired;
};

// Pending riders with now > latest departure become Expired. Finalized and
// already-expired riders are left alone and not listed.
ExpiryResult expire_requests(std::span<Rider> riders, double now_s);

// Per-purpose RNG stream derived from the scenario seed.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace ridepool
