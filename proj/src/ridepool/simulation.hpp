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
#include <vector>

#include "ridepool/config.hpp"
#include "ridepool/demand.hpp"
#include "ridepool/dispatch.hpp"
#include "ridepool/events.hpp"
#include "ridepool/fleet.hpp"
#include "ridepool/metrics.hpp"
#include "ridepool/road_network.hpp"
#include "ridepool/routing.hpp"

namespace ridepool {

struct EpochRecord {
  int epoch = 0;
  double t_s = 0.0;
  std::size_t pending = 0;  // riders offered to the matcher
  std::size_t expired = 0;
  std::size_t vehicles_available = 0;
  std::size_t candidates_central = 0;
  std::size_t candidates_max_agent = 0;
  std::size_t active_agents = 0;
  std::size_t proposals = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t riders_assigned = 0;
  double compute_max_s = 0.0;
  double compute_mean_s = 0.0;
};

/// Tallies kept online, independent of the event log.
struct SimCounters {
  std::int64_t requests = 0;
  std::int64_t unreachable_requests = 0;  // rejected at creation
  std::int64_t served = 0;
  std::int64_t expired = 0;
  std::int64_t assignments = 0;
  std::int64_t commit_late_pickups = 0;
  std::int64_t commit_late_dropoffs = 0;
  std::int64_t commit_capacity_violations = 0;
  std::int64_t late_pickups = 0;   // congestion drift after commitment
  std::int64_t late_dropoffs = 0;
  int max_occupancy = 0;
  std::int64_t occupancy_violations = 0;
  double shared_odometer_m = 0.0;
  double private_odometer_m = 0.0;
  std::int64_t private_trips = 0;
  int epochs = 0;
  double end_s = 0.0;
  bool truncated = false;  // stopped by max_sim_s
};

/// Rider plus what happened to it.
struct RiderRecord {
  Rider rider;
  std::optional<VehicleId> vehicle;
  std::optional<double> pickup_s;
  std::optional<double> dropoff_s;
};

/// Background single-occupancy vehicle.
struct PrivateVehicle {
  std::int64_t id = 0;
  NodeIndex destination = 0;
  NodeIndex node = 0;
  std::optional<LinkIndex> link;
  double offset_m = 0.0;
  double link_enter_s = 0.0;
  double odometer_m = 0.0;
  bool active = true;
};

/// Fixed-tick world. Each tick: a matching time when the clock sits on a
/// multiple of the interval, then new trips, then movement, then one speed
/// update for every link. Movement inside a tick is continuous, so events
/// carry exact times.
class Simulation {
 public:
  Simulation(const RoadNetwork& net, const ScenarioConfig& cfg, std::vector<Trip> demand,
             std::vector<Vehicle> fleet);

  // One tick; returns its events in time order.
  std::vector<SimEvent> step();
  bool finished() const;

  double now() const { return now_s_; }
  const std::vector<Vehicle>& vehicles() const { return vehicles_; }
  const std::vector<RiderRecord>& riders() const { return riders_; }
  const std::vector<PrivateVehicle>& private_vehicles() const { return private_; }
  const std::vector<EpochRecord>& epochs() const { return epochs_; }
  const SimCounters& counters() const { return counters_; }
  const TrafficState& traffic() const { return traffic_; }

  // Where the vehicle can start new stops and how long until it gets there.
  VehicleAnchor anchor_of(const Vehicle& v) const;
  EpochSnapshot snapshot(const TravelTimeTable& tt) const;
  // Applies an accepted proposal at the current time.
  void commit(const Proposal& p);

 private:
  void run_matching();
  void spawn(const Trip& trip, double t_end);
  void execute_stop(Vehicle& v, const Stop& s, double t);
  template <typename Agent, typename OnNode>
  void advance(Agent& a, double t, double t_end, bool private_vehicle, OnNode on_node);
  template <typename Agent>
  void enter(Agent& a, LinkIndex l, double t, bool private_vehicle);
  std::optional<LinkIndex> shared_next(Vehicle& v, double t);
  void emit(SimEvent e) { tick_events_.push_back(std::move(e)); }

  const RoadNetwork& net_;
  ScenarioConfig cfg_;
  std::vector<Trip> demand_;
  std::size_t next_trip_ = 0;
  std::vector<Vehicle> vehicles_;
  std::vector<RiderRecord> riders_;  // index = rider id
  std::vector<PrivateVehicle> private_;
  TrafficState traffic_;
  Router router_;
  std::vector<int> link_count_;  // vehicles on each link
  std::int64_t tick_ = 0;
  std::int64_t ticks_per_epoch_ = 1;
  double now_s_ = 0.0;
  int epoch_ = 0;
  std::vector<EpochRecord> epochs_;
  SimCounters counters_;
  std::vector<SimEvent> tick_events_;
};

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<SimEvent> events;
  std::vector<EpochRecord> epochs;
  SimCounters counters;
  IndicatorSet indicators;  // from the log, plus compute times from the epochs
  std::vector<RiderRecord> riders;
};

struct ScenarioInputs {
  RoadNetwork net;
  OdSpec od;
};

// Builds the network and OD spec a config names.
ScenarioInputs load_inputs(const ScenarioConfig& cfg);

// Validates the config before any work. Deterministic in the seed except for
// compute-time fields, which are zero when timing is off.
ScenarioResult run_scenario(const ScenarioConfig& cfg);
ScenarioResult run_scenario(const ScenarioConfig& cfg, const ScenarioInputs& inputs);

}  // namespace ridepool
