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

#include "ridepool/scheduling.hpp"

#include <array>

#include "ridepool/assignment.hpp"
#include "ridepool/error.hpp"

namespace ridepool {

namespace {

Stop pickup(const UserState& u) { return {u.id, StopKind::Pickup, u.origin}; }
Stop dropoff(const UserState& u) { return {u.id, StopKind::Dropoff, u.destination}; }

void time_pattern(Pattern& p, const VehicleAnchor& vehicle, const TravelTimeTable& tt) {
  double t = vehicle.delay_s;
  NodeIndex at = vehicle.node;
  p.arrival_s.clear();
  for (const auto& s : p.stops) {
    t += tt(at, s.node);
    at = s.node;
    p.arrival_s.push_back(t);
  }
  p.total_time_s = t;
}

Pattern make_pattern(int order, std::vector<Stop> stops) {
  Pattern p;
  p.order = order;
  p.stops = std::move(stops);
  return p;
}

const UserState& member(const UserState& a, const UserState& b, UserId id) {
  return a.id == id ? a : b;
}

}  // namespace

std::vector<Pattern> enumerate_patterns(const UserState& a, const UserState& b,
                                        const VehicleAnchor& vehicle, const TravelTimeTable& tt) {
  if (a.id == b.id) throw ValidationError("pattern needs two distinct users");
  if (a.onboard && b.onboard) throw ValidationError("both users already onboard");
  std::vector<Pattern> out;
  if (a.onboard || b.onboard) {
    const UserState& p = a.onboard ? a : b;
    const UserState& r = a.onboard ? b : a;
    out.push_back(make_pattern(0, {pickup(r), dropoff(r), dropoff(p)}));
    out.push_back(make_pattern(1, {pickup(r), dropoff(p), dropoff(r)}));
  } else {
    const UserState& j = a.id < b.id ? a : b;
    const UserState& k = a.id < b.id ? b : a;
    const std::array<std::array<Stop, 4>, 6> orders{{
        {pickup(j), pickup(k), dropoff(j), dropoff(k)},
        {pickup(j), pickup(k), dropoff(k), dropoff(j)},
        {pickup(j), dropoff(j), pickup(k), dropoff(k)},
        {pickup(k), pickup(j), dropoff(k), dropoff(j)},
        {pickup(k), pickup(j), dropoff(j), dropoff(k)},
        {pickup(k), dropoff(k), pickup(j), dropoff(j)},
    }};
    for (int i = 0; i < 6; ++i) out.push_back(make_pattern(i, {orders[i].begin(), orders[i].end()}));
  }
  for (auto& p : out) time_pattern(p, vehicle, tt);
  return out;
}

bool check_pattern(Pattern& pattern, double now_s, const UserState& a, const UserState& b) {
  pattern.late_pickup = pattern.late_dropoff = false;
  for (std::size_t i = 0; i < pattern.stops.size(); ++i) {
    const auto& s = pattern.stops[i];
    const auto& u = member(a, b, s.user);
    const double at = now_s + pattern.arrival_s[i];
    if (s.kind == StopKind::Pickup) {
      if (!(at <= u.latest_departure_s)) pattern.late_pickup = true;
    } else {
      if (!(at <= u.latest_arrival_s)) pattern.late_dropoff = true;
    }
  }
  pattern.feasible = !pattern.late_pickup && !pattern.late_dropoff;
  return pattern.feasible;
}

double direct_time(const UserState& user, const VehicleAnchor& vehicle, const TravelTimeTable& tt) {
  if (user.onboard) return vehicle.delay_s + tt(vehicle.node, user.destination);
  return tt(user.origin, user.destination);
}

double vtts(const Pattern& pattern, const UserState& a, const UserState& b,
            const VehicleAnchor& vehicle, const TravelTimeTable& tt) {
  return direct_time(a, vehicle, tt) + direct_time(b, vehicle, tt) - pattern.total_time_s;
}

std::optional<ScoredMatch> best_pattern(const UserState& a, const UserState& b,
                                        const VehicleAnchor& vehicle, double now_s,
                                        const TravelTimeTable& tt) {
  std::optional<ScoredMatch> best;
  for (auto& p : enumerate_patterns(a, b, vehicle, tt)) {
    if (!check_pattern(p, now_s, a, b)) continue;
    const double saving = vtts(p, a, b, vehicle, tt);
    if (!best || saving > best->vtts) best = ScoredMatch{std::move(p), saving};
  }
  return best;
}

TypeBOutcome commit_typeb(const UserState& rider, const UserState& passenger,
                          const VehicleAnchor& vehicle, double now_s, const TravelTimeTable& tt) {
  TypeBOutcome out;
  if (vehicle.free_seats < 1) {
    out.no_seat = true;
    return out;
  }
  bool all_late_pickup = true, all_late_dropoff = true;
  for (auto& p : enumerate_patterns(rider, passenger, vehicle, tt)) {
    check_pattern(p, now_s, rider, passenger);
    all_late_pickup = all_late_pickup && p.late_pickup;
    all_late_dropoff = all_late_dropoff && p.late_dropoff;
  }
  out.match = best_pattern(rider, passenger, vehicle, now_s, tt);
  if (!out.match) {
    out.late_pickup = all_late_pickup;
    out.late_dropoff = all_late_dropoff;
  }
  return out;
}

std::vector<SingletonMatch> assign_singletons(std::span<const UserState> riders,
                                              std::span<const VehicleAnchor> vehicles,
                                              double now_s, const TravelTimeTable& tt) {
  WeightMatrix w(riders.size(), vehicles.size());
  std::vector<double> pickup_time(riders.size() * vehicles.size(), kNoPath);
  for (std::size_t r = 0; r < riders.size(); ++r) {
    const auto& u = riders[r];
    const double trip = tt(u.origin, u.destination);
    for (std::size_t v = 0; v < vehicles.size(); ++v) {
      const double pick = vehicles[v].delay_s + tt(vehicles[v].node, u.origin);
      if (!reachable(pick) || !reachable(trip)) continue;
      if (!(now_s + pick <= u.latest_departure_s)) continue;
      if (!(now_s + pick + trip <= u.latest_arrival_s)) continue;
      pickup_time[r * vehicles.size() + v] = pick;
      w.set(r, v, -pick);
    }
  }
  std::vector<SingletonMatch> out;
  for (auto [r, v] : solve_assignment(w, AssignmentObjective::MaxCardinalityThenWeight).pairs)
    out.push_back({r, v, pickup_time[r * vehicles.size() + v]});
  return out;
}

std::vector<Stop> singleton_schedule(const UserState& rider) {
  return {pickup(rider), dropoff(rider)};
}

ScheduleCheck verify_schedule(const VehicleAnchor& vehicle, std::span<const Stop> stops,
                              double now_s, int initial_occupancy, int capacity,
                              const std::function<double(NodeIndex, NodeIndex)>& leg_time,
                              const std::function<StopWindow(const Stop&)>& window) {
  ScheduleCheck out;
  double t = now_s + vehicle.delay_s;
  NodeIndex at = vehicle.node;
  int occupancy = initial_occupancy;
  out.max_occupancy = occupancy;
  for (const auto& s : stops) {
    const double leg = leg_time(at, s.node);
    if (!reachable(leg)) out.unreachable = true;
    t += leg;
    at = s.node;
    out.arrival_s.push_back(t);
    const double latest = window(s).latest_s;
    // Legs summed along a different route may differ from the table in the
    // last bits; anything beyond a microsecond is a real violation.
    const bool late = !(t <= latest + 1e-6);
    if (s.kind == StopKind::Pickup) {
      if (late) ++out.late_pickups;
      ++occupancy;
    } else {
      if (late) ++out.late_dropoffs;
      --occupancy;
    }
    out.max_occupancy = std::max(out.max_occupancy, occupancy);
    if (occupancy > capacity || occupancy < 0) out.capacity_exceeded = true;
  }
  return out;
}

}  // namespace ridepool
