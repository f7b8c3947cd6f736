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

#include "ridepool/pairing.hpp"

#include <algorithm>
#include <cmath>

#include "ridepool/error.hpp"

namespace ridepool {

PairType pair_type(const UserState& a, const UserState& b) {
  const int passengers = (a.kind == UserKind::Passenger) + (b.kind == UserKind::Passenger);
  return passengers == 0 ? PairType::A : passengers == 1 ? PairType::B : PairType::C;
}

void PairScoreConfig::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0)) throw ValidationError("alpha and beta must be non-negative");
  if (std::abs(alpha + beta - 1.0) > 1e-9) throw ValidationError("alpha + beta must equal 1");
  if (!(time_unit_s > 0.0)) throw ValidationError("psi time unit must be positive");
}

std::vector<CandidatePair> enumerate_pairs(std::span<const UserState> users) {
  std::vector<CandidatePair> out;
  const std::size_t m = users.size();
  if (m < 2) return out;
  out.reserve(m * (m - 1) / 2);
  for (std::size_t i = 0; i < m; ++i) {
    if (i > 0 && !(users[i - 1].id < users[i].id))
      throw ValidationError("users must be sorted by id with no duplicates");
    for (std::size_t j = i + 1; j < m; ++j) out.push_back({i, j, pair_type(users[i], users[j]), 0.0});
  }
  return out;
}

std::vector<CandidatePair> filter_feasible(std::span<const CandidatePair> pairs,
                                           std::span<const UserState> users, double now_s,
                                           const TravelTimeTable& tt, PairingStats* stats) {
  PairingStats local;
  std::vector<CandidatePair> kept;
  for (const auto& p : pairs) {
    ++local.enumerated;
    const auto& a = users[p.first];
    const auto& b = users[p.second];
    switch (p.type) {
      case PairType::C:
        ++local.dropped_type_c;
        continue;
      case PairType::A: {
        const double ab = tt(a.origin, b.origin);
        const double ba = tt(b.origin, a.origin);
        if (!reachable(ab) && !reachable(ba)) {
          ++local.dropped_no_path;
          continue;
        }
        const bool a_reaches_b = now_s + ab <= b.latest_departure_s;
        const bool b_reaches_a = now_s + ba <= a.latest_departure_s;
        if (!a_reaches_b && !b_reaches_a) {
          ++local.dropped_pickup;
          continue;
        }
        break;
      }
      case PairType::B: {
        const auto& rider = a.kind == UserKind::Rider ? a : b;
        const auto& passenger = a.kind == UserKind::Rider ? b : a;
        if (passenger.vehicle_free_seats < 1) {
          ++local.dropped_no_seat;
          continue;
        }
        const double leg = tt(passenger.location, rider.origin);
        if (!reachable(leg)) {
          ++local.dropped_no_path;
          continue;
        }
        if (!(now_s + passenger.location_delay_s + leg <= rider.latest_departure_s)) {
          ++local.dropped_pickup;
          continue;
        }
        break;
      }
    }
    kept.push_back(p);
  }
  if (stats) {
    stats->enumerated += local.enumerated;
    stats->dropped_type_c += local.dropped_type_c;
    stats->dropped_pickup += local.dropped_pickup;
    stats->dropped_no_seat += local.dropped_no_seat;
    stats->dropped_no_path += local.dropped_no_path;
  }
  return kept;
}

double psi(double origin_distance_s, double destination_distance_s, const PairScoreConfig& cfg) {
  const double o = origin_distance_s / cfg.time_unit_s;
  const double d = destination_distance_s / cfg.time_unit_s;
  const double denom = 1.0 + o + d;
  return cfg.alpha * (1.0 - o / denom) + cfg.beta * (1.0 - d / denom);
}

double time_distance(const TravelTimeTable& tt, NodeIndex a, NodeIndex b) {
  return std::min(tt(a, b), tt(b, a));
}

std::vector<CandidatePair> score_pairs(std::span<const CandidatePair> pairs,
                                       std::span<const UserState> users,
                                       const TravelTimeTable& tt, const PairScoreConfig& cfg,
                                       PairingStats* stats) {
  std::vector<CandidatePair> out;
  out.reserve(pairs.size());
  for (auto p : pairs) {
    const auto& a = users[p.first];
    const auto& b = users[p.second];
    const double o = time_distance(tt, a.location, b.location);
    const double d = time_distance(tt, a.destination, b.destination);
    if (!reachable(o) || !reachable(d)) {
      if (stats) ++stats->dropped_no_path;
      continue;
    }
    p.psi = psi(o, d, cfg);
    out.push_back(p);
  }
  return out;
}

GreedyResult greedy_match(std::span<const CandidatePair> scored, std::span<const UserState> users) {
  std::vector<CandidatePair> order(scored.begin(), scored.end());
  auto key = [&](const CandidatePair& p) {
    return std::pair{users[p.first].id, users[p.second].id};
  };
  std::sort(order.begin(), order.end(), [&](const CandidatePair& x, const CandidatePair& y) {
    if (x.psi != y.psi) return x.psi > y.psi;
    return key(x) < key(y);
  });
  GreedyResult out;
  std::vector<char> used(users.size(), 0);
  for (const auto& p : order) {
    if (used[p.first] || used[p.second]) continue;
    used[p.first] = used[p.second] = 1;
    out.pairs.push_back(p);
  }
  for (std::size_t i = 0; i < users.size(); ++i)
    if (!used[i]) out.unmatched.push_back(i);
  return out;
}

}  // namespace ridepool
