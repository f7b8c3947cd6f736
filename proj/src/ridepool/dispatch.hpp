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
#include <string>
#include <vector>

#include "ridepool/pairing.hpp"
#include "ridepool/road_network.hpp"
#include "ridepool/routing.hpp"
#include "ridepool/scheduling.hpp"

namespace ridepool {

enum class DispatchMode : std::uint8_t { Centralized, Distributed };

inline constexpr int kMaxSearchLevel = 3;

struct DispatchConfig {
  DispatchMode mode = DispatchMode::Centralized;
  int search_level = 3;  // hop radius for the agent vehicle search, 0..3
  bool singleton_assign = true;
  std::optional<double> min_vtts_s;  // pairs below this saving are not offered to vehicles
  PairScoreConfig score;
  int threads = 1;  // worker threads for per-agent matching
  bool log_messages = true;
};

/// A vehicle as visible to dispatchers at a matching time. Only vehicles with
/// a free seat are part of a snapshot.
struct VehicleSnapshot {
  VehicleAnchor anchor;
  NodeIndex locator = 0;  // intersection whose inbound links hold the vehicle
  bool idle = true;
  std::optional<UserState> passenger;  // the single assigned user of an enroute vehicle
};

/// Frozen world state for one matching time. Riders and vehicles sorted by
/// id; riders are pending and already past the expiry check.
struct EpochSnapshot {
  const RoadNetwork* net = nullptr;
  const TravelTimeTable* tt = nullptr;
  int epoch = 0;
  double now_s = 0.0;
  std::vector<UserState> riders;
  std::vector<VehicleSnapshot> vehicles;
};

enum class ProposalKind : std::uint8_t { PairToIdle, TypeB, Singleton };

inline constexpr int kCentralAgent = -1;

/// One proposed commitment. `schedule` is the vehicle's complete new stop
/// list.
struct Proposal {
  int agent = kCentralAgent;  // proposing intersection (NodeIndex), or the central dispatcher
  ProposalKind kind = ProposalKind::Singleton;
  VehicleId vehicle = 0;
  std::vector<UserId> riders;       // riders that become passengers
  std::optional<UserId> passenger;  // existing passenger shared with (type b)
  double psi = 0.0;
  double vtts = 0.0;
  std::vector<Stop> schedule;
};

enum class MessageType : std::uint8_t {
  VehicleQuery,
  VehicleReport,
  AssignmentProposal,
  ProposalDecision
};

const char* to_string(MessageType t);

struct Endpoint {
  enum class Kind : std::uint8_t { Intersection, Vehicle } kind = Kind::Intersection;
  std::int64_t id = 0;  // NodeId or VehicleId

  std::string str() const;
};

struct DispatchMessage {
  int epoch = 0;
  MessageType type = MessageType::VehicleQuery;
  Endpoint sender;
  Endpoint receiver;
  std::int64_t count = 0;  // vehicles in a report
  bool accepted = false;   // decisions
};

struct EpochResult {
  std::vector<Proposal> accepted;
  std::vector<Proposal> rejected;
  std::vector<DispatchMessage> messages;
  double compute_max_s = 0.0;   // centralized: the whole matching
  double compute_mean_s = 0.0;  // centralized: equal to max
  std::size_t active_agents = 0;
  std::size_t candidates_central = 0;    // users + vehicles in the full snapshot
  std::size_t candidates_max_agent = 0;  // largest per-agent candidate set (distributed)
  PairingStats pairing;
};

// Both steps of the matcher over one candidate set. `vehicles` holds idle
// vehicles and enroute vehicles with one passenger; their passengers join the
// riders in step 1.
std::vector<Proposal> match_candidates(std::span<const UserState> riders,
                                       std::span<const VehicleSnapshot> vehicles, double now_s,
                                       const TravelTimeTable& tt, const DispatchConfig& cfg,
                                       int agent, PairingStats* stats = nullptr);

EpochResult run_epoch_centralized(const EpochSnapshot& snap, const DispatchConfig& cfg);

// Vehicles whose locator lies within `level` hops of `agent`, ascending id.
std::vector<std::size_t> search_vehicles(const RoadNetwork& net, NodeIndex agent, int level,
                                         std::span<const VehicleSnapshot> vehicles);

EpochResult run_epoch_distributed(const EpochSnapshot& snap, const DispatchConfig& cfg);

struct Resolution {
  std::vector<Proposal> accepted;
  std::vector<Proposal> rejected;
};

// User conflicts first (highest PSI keeps the user), then vehicle conflicts
// among the survivors (highest VTTS keeps the vehicle). Ties go to the lowest
// proposing agent. Independent of the order proposals arrive in.
Resolution resolve_conflicts(std::vector<Proposal> proposals);

// Convenience dispatcher on cfg.mode.
EpochResult run_epoch(const EpochSnapshot& snap, const DispatchConfig& cfg);

}  // namespace ridepool
