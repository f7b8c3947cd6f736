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

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "ridepool/road_network.hpp"

namespace ridepool {

using UserId = std::int64_t;
using VehicleId = std::int64_t;

inline constexpr int kSharedCapacity = 2;

enum class StopKind : std::uint8_t { Pickup, Dropoff };

struct Stop {
  UserId user = 0;
  StopKind kind = StopKind::Pickup;
  NodeIndex node = 0;

  friend bool operator==(const Stop&, const Stop&) = default;
};

/// Shared vehicle. Either parked at `node` (no link) or travelling on `link`
/// with `offset_m` meters already covered.
struct Vehicle {
  VehicleId id = 0;
  int capacity = kSharedCapacity;

  NodeIndex node = 0;
  std::optional<LinkIndex> link;
  double offset_m = 0.0;
  double link_enter_s = 0.0;

  std::vector<UserId> onboard;
  std::vector<UserId> assigned;  // onboard plus awaiting pickup
  std::deque<Stop> schedule;     // committed stop order, immutable once set
  std::deque<LinkIndex> route;   // links toward schedule.front()

  double odometer_m = 0.0;
  int assignments = 0;

  bool idle() const { return assigned.empty(); }
  int free_seats() const { return capacity - static_cast<int>(assigned.size()); }
  // At least one empty seat.
  bool available() const { return free_seats() > 0; }
  int occupancy() const { return static_cast<int>(onboard.size()); }
  bool is_onboard(UserId u) const {
    return std::find(onboard.begin(), onboard.end(), u) != onboard.end();
  }
};

}  // namespace ridepool
