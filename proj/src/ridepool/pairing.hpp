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
#include <vector>

#include "ridepool/fleet.hpp"
#include "ridepool/routing.hpp"

namespace ridepool {

enum class UserKind : std::uint8_t { Rider, Passenger };

/// A user as seen by the matcher at one matching time.
///
/// `location` is the current location: the origin for riders and for
/// passengers still waiting, the vehicle's next node for onboard passengers
/// (reached after `location_delay_s`).
struct UserState {
  UserId id = 0;
  UserKind kind = UserKind::Rider;
  NodeIndex origin = 0;
  NodeIndex destination = 0;
  NodeIndex location = 0;
  double location_delay_s = 0.0;
  double latest_departure_s = kNoPath;
  double latest_arrival_s = kNoPath;
  bool onboard = false;
  std::optional<VehicleId> vehicle;
  int vehicle_free_seats = 0;
};

// a: rider-rider, b: rider-passenger, c: passenger-passenger.
enum class PairType : std::uint8_t { A, B, C };

PairType pair_type(const UserState& a, const UserState& b);

/// Unordered user pair, canonical: `first` indexes the user with the smaller
/// id. Indices refer to the user span the pair was enumerated from.
struct CandidatePair {
  std::size_t first = 0;
  std::size_t second = 0;
  PairType type = PairType::A;
  double psi = 0.0;
};

struct PairScoreConfig {
  double alpha = 0.5;
  double beta = 0.5;
  double time_unit_s = 60.0;  // time distances enter the score in these units

  // Throws ValidationError unless alpha, beta >= 0, alpha + beta = 1 and the
  // unit is positive.
  void validate() const;
};

struct PairingStats {
  std::size_t enumerated = 0;
  std::size_t dropped_type_c = 0;
  std::size_t dropped_pickup = 0;   // origin unreachable in time
  std::size_t dropped_no_seat = 0;  // vehicle full
  std::size_t dropped_no_path = 0;  // some leg unreachable
};

// All m(m-1)/2 unordered pairs. `users` must be sorted by id.
std::vector<CandidatePair> enumerate_pairs(std::span<const UserState> users);

// Drops type-c pairs; keeps type-a pairs when a virtual vehicle starting at
// either origin reaches the other origin by that rider's latest departure;
// keeps type-b pairs when the passenger's vehicle, from the passenger's
// current location, reaches the rider's origin in time and has a free seat.
std::vector<CandidatePair> filter_feasible(std::span<const CandidatePair> pairs,
                                           std::span<const UserState> users, double now_s,
                                           const TravelTimeTable& tt,
                                           PairingStats* stats = nullptr);

// Score from origin and destination time distances (seconds):
//   alpha * (1 - o / (1 + o + d)) + beta * (1 - d / (1 + o + d))
// with o, d expressed in `time_unit_s`.
double psi(double origin_distance_s, double destination_distance_s, const PairScoreConfig& cfg);

// Symmetric time distance: the faster of the two directions.
double time_distance(const TravelTimeTable& tt, NodeIndex a, NodeIndex b);

// Fills `psi` on each pair; pairs with an unreachable leg are dropped.
std::vector<CandidatePair> score_pairs(std::span<const CandidatePair> pairs,
                                       std::span<const UserState> users,
                                       const TravelTimeTable& tt, const PairScoreConfig& cfg,
                                       PairingStats* stats = nullptr);

struct GreedyResult {
  std::vector<CandidatePair> pairs;    // in selection order
  std::vector<std::size_t> unmatched;  // user indices, ascending
};

// Repeatedly takes the highest-PSI pair and discards every pair sharing a
// user with it. Equal scores go to the smaller (first id, second id).
GreedyResult greedy_match(std::span<const CandidatePair> scored, std::span<const UserState> users);

}  // namespace ridepool
