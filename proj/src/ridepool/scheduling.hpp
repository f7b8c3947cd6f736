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

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ridepool/fleet.hpp"
#include "ridepool/pairing.hpp"
#include "ridepool/routing.hpp"

namespace ridepool {

/// Where a vehicle can start serving new stops: `node`, reached after
/// `delay_s` (non-zero while the vehicle is still on a link).
struct VehicleAnchor {
  VehicleId id = 0;
  NodeIndex node = 0;
  double delay_s = 0.0;
  int free_seats = kSharedCapacity;
};

/// Pickup/dropoff ordering for one pair, timed from the vehicle anchor.
struct Pattern {
  int order = 0;                  // index in the fixed enumeration order
  std::vector<Stop> stops;
  std::vector<double> arrival_s;  // per stop, seconds after the matching time
  double total_time_s = 0.0;      // anchor delay plus every leg
  bool feasible = false;
  bool late_pickup = false;
  bool late_dropoff = false;
};

// Orderings for two users j < k (by id) that both still need a pickup:
//   0 Pj Pk Dj Dk   1 Pj Pk Dk Dj   2 Pj Dj Pk Dk
//   3 Pk Pj Dk Dj   4 Pk Pj Dj Dk   5 Pk Dk Pj Dj
// When one user is an onboard passenger p and the other a rider r:
//   0 Pr Dr Dp      1 Pr Dp Dr
std::vector<Pattern> enumerate_patterns(const UserState& a, const UserState& b,
                                        const VehicleAnchor& vehicle, const TravelTimeTable& tt);

// Every pickup must happen by that user's latest departure and every dropoff by the
// latest arrival. Sets the pattern's flags and returns `feasible`.
bool check_pattern(Pattern& pattern, double now_s, const UserState& a, const UserState& b);

// Direct travel time from the user's current location to the destination.
// Onboard passengers start from the vehicle anchor, after its delay.
double direct_time(const UserState& user, const VehicleAnchor& vehicle, const TravelTimeTable& tt);

// Travel time saving: both direct times minus the pattern total. May be negative.
double vtts(const Pattern& pattern, const UserState& a, const UserState& b,
            const VehicleAnchor& vehicle, const TravelTimeTable& tt);

struct ScoredMatch {
  Pattern pattern;
  double vtts = 0.0;
};

// Feasible pattern with the largest saving; the earlier enumeration index
// wins ties. nullopt when no pattern meets both windows.
std::optional<ScoredMatch> best_pattern(const UserState& a, const UserState& b,
                                        const VehicleAnchor& vehicle, double now_s,
                                        const TravelTimeTable& tt);

struct TypeBOutcome {
  std::optional<ScoredMatch> match;  // set when accepted
  bool no_seat = false;
  bool late_pickup = false;  // every enumerated pattern picked up late
  bool late_dropoff = false;  // every enumerated pattern dropped off late
};

// Insert rider into the vehicle already serving `passenger`. The accepted
// pattern becomes the vehicle's complete new schedule.
TypeBOutcome commit_typeb(const UserState& rider, const UserState& passenger,
                          const VehicleAnchor& vehicle, double now_s, const TravelTimeTable& tt);

struct SingletonMatch {
  std::size_t rider = 0;    // index into the rider span
  std::size_t vehicle = 0;  // index into the vehicle span
  double pickup_s = 0.0;    // anchor delay plus deadhead
};

// Matches lone riders to idle vehicles: as many riders as possible, then the
// least total pickup time, subject to both time windows for a direct trip.
std::vector<SingletonMatch> assign_singletons(std::span<const UserState> riders,
                                              std::span<const VehicleAnchor> vehicles,
                                              double now_s, const TravelTimeTable& tt);

// Builds the schedule stops for a single rider.
std::vector<Stop> singleton_schedule(const UserState& rider);

struct StopWindow {
  double latest_s = kNoPath;  // latest departure for pickups, latest arrival for dropoffs
};

struct ScheduleCheck {
  int late_pickups = 0;
  int late_dropoffs = 0;
  int max_occupancy = 0;
  bool capacity_exceeded = false;
  bool unreachable = false;
  std::vector<double> arrival_s;  // absolute
};

// Replays a stop list leg by leg from the anchor with an arbitrary leg-time
// function and checks every stop against its window and the capacity.
ScheduleCheck verify_schedule(const VehicleAnchor& vehicle, std::span<const Stop> stops,
                              double now_s, int initial_occupancy, int capacity,
                              const std::function<double(NodeIndex, NodeIndex)>& leg_time,
                              const std::function<StopWindow(const Stop&)>& window);

}  // namespace ridepool
