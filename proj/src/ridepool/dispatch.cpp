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

#include "ridepool/dispatch.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <set>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "ridepool/assignment.hpp"
#include "ridepool/error.hpp"

namespace ridepool {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t candidate_count(std::span<const UserState> riders,
                            std::span<const VehicleSnapshot> vehicles) {
  std::size_t n = riders.size() + vehicles.size();
  for (const auto& v : vehicles)
    if (v.passenger) ++n;
  return n;
}

void accumulate(PairingStats& into, const PairingStats& s) {
  into.enumerated += s.enumerated;
  into.dropped_type_c += s.dropped_type_c;
  into.dropped_pickup += s.dropped_pickup;
  into.dropped_no_seat += s.dropped_no_seat;
  into.dropped_no_path += s.dropped_no_path;
}

}  // namespace

const char* to_string(MessageType t) {
  switch (t) {
    case MessageType::VehicleQuery:
      return "VehicleQuery";
    case MessageType::VehicleReport:
      return "VehicleReport";
    case MessageType::AssignmentProposal:
      return "AssignmentProposal";
    case MessageType::ProposalDecision:
      return "ProposalDecision";
  }
  return "?";
}

std::string Endpoint::str() const {
  return (kind == Kind::Intersection ? "i2:" : "veh:") + std::to_string(id);
}

std::vector<Proposal> match_candidates(std::span<const UserState> riders,
                                       std::span<const VehicleSnapshot> vehicles, double now_s,
                                       const TravelTimeTable& tt, const DispatchConfig& cfg,
                                       int agent, PairingStats* stats) {
  // Step 1 runs over riders plus the single passenger of each enroute vehicle.
  std::vector<UserState> users(riders.begin(), riders.end());
  std::unordered_map<VehicleId, std::size_t> vehicle_at;
  for (std::size_t v = 0; v < vehicles.size(); ++v) {
    vehicle_at.emplace(vehicles[v].anchor.id, v);
    if (vehicles[v].passenger) users.push_back(*vehicles[v].passenger);
  }
  std::sort(users.begin(), users.end(),
            [](const UserState& a, const UserState& b) { return a.id < b.id; });

  const auto pairs = enumerate_pairs(users);
  const auto feasible = filter_feasible(pairs, users, now_s, tt, stats);
  const auto scored = score_pairs(feasible, users, tt, cfg.score, stats);
  const auto greedy = greedy_match(scored, users);

  std::vector<Proposal> out;
  std::vector<std::size_t> lone;  // riders left for the singleton pass
  std::vector<CandidatePair> type_a;
  for (const auto& p : greedy.pairs) {
    if (p.type == PairType::A) {
      type_a.push_back(p);
      continue;
    }
    const bool first_is_passenger = users[p.first].kind == UserKind::Passenger;
    const std::size_t pi = first_is_passenger ? p.first : p.second;
    const std::size_t ri = first_is_passenger ? p.second : p.first;
    const auto& passenger = users[pi];
    const auto& vehicle = vehicles[vehicle_at.at(*passenger.vehicle)];
    auto outcome = commit_typeb(users[ri], passenger, vehicle.anchor, now_s, tt);
    if (!outcome.match) {
      lone.push_back(ri);
      continue;
    }
    Proposal prop;
    prop.agent = agent;
    prop.kind = ProposalKind::TypeB;
    prop.vehicle = vehicle.anchor.id;
    prop.riders = {users[ri].id};
    prop.passenger = passenger.id;
    prop.psi = p.psi;
    prop.vtts = outcome.match->vtts;
    prop.schedule = std::move(outcome.match->pattern.stops);
    out.push_back(std::move(prop));
  }

  // Step 2: rider pairs onto idle vehicles.
  std::vector<std::size_t> idle;
  for (std::size_t v = 0; v < vehicles.size(); ++v)
    if (vehicles[v].idle) idle.push_back(v);
  WeightMatrix w(type_a.size(), idle.size());
  std::vector<std::optional<ScoredMatch>> best(type_a.size() * idle.size());
  for (std::size_t r = 0; r < type_a.size(); ++r) {
    const auto& a = users[type_a[r].first];
    const auto& b = users[type_a[r].second];
    for (std::size_t c = 0; c < idle.size(); ++c) {
      auto m = best_pattern(a, b, vehicles[idle[c]].anchor, now_s, tt);
      if (!m) continue;
      if (cfg.min_vtts_s && m->vtts < *cfg.min_vtts_s) continue;
      w.set(r, c, m->vtts);
      best[r * idle.size() + c] = std::move(m);
    }
  }
  std::vector<char> pair_assigned(type_a.size(), 0), vehicle_used(idle.size(), 0);
  for (auto [r, c] : solve_assignment(w).pairs) {
    pair_assigned[r] = vehicle_used[c] = 1;
    auto& m = *best[r * idle.size() + c];
    Proposal prop;
    prop.agent = agent;
    prop.kind = ProposalKind::PairToIdle;
    prop.vehicle = vehicles[idle[c]].anchor.id;
    prop.riders = {users[type_a[r].first].id, users[type_a[r].second].id};
    prop.psi = type_a[r].psi;
    prop.vtts = m.vtts;
    prop.schedule = std::move(m.pattern.stops);
    out.push_back(std::move(prop));
  }
  for (std::size_t r = 0; r < type_a.size(); ++r) {
    if (pair_assigned[r]) continue;
    lone.push_back(type_a[r].first);
    lone.push_back(type_a[r].second);
  }
  for (auto u : greedy.unmatched)
    if (users[u].kind == UserKind::Rider) lone.push_back(u);

  if (!cfg.singleton_assign) return out;
  std::sort(lone.begin(), lone.end());
  std::vector<UserState> lone_users;
  for (auto u : lone) lone_users.push_back(users[u]);
  std::vector<VehicleAnchor> free_anchors;
  std::vector<std::size_t> free_index;
  for (std::size_t c = 0; c < idle.size(); ++c) {
    if (vehicle_used[c]) continue;
    free_anchors.push_back(vehicles[idle[c]].anchor);
    free_index.push_back(idle[c]);
  }
  for (const auto& s : assign_singletons(lone_users, free_anchors, now_s, tt)) {
    Proposal prop;
    prop.agent = agent;
    prop.kind = ProposalKind::Singleton;
    prop.vehicle = vehicles[free_index[s.vehicle]].anchor.id;
    prop.riders = {lone_users[s.rider].id};
    prop.vtts = -s.pickup_s;
    prop.schedule = singleton_schedule(lone_users[s.rider]);
    out.push_back(std::move(prop));
  }
  return out;
}

EpochResult run_epoch_centralized(const EpochSnapshot& snap, const DispatchConfig& cfg) {
  EpochResult out;
  out.candidates_central = candidate_count(snap.riders, snap.vehicles);
  if (snap.riders.empty()) return out;
  const auto start = Clock::now();
  out.accepted = match_candidates(snap.riders, snap.vehicles, snap.now_s, *snap.tt, cfg,
                                  kCentralAgent, &out.pairing);
  out.compute_max_s = out.compute_mean_s = seconds_since(start);
  out.active_agents = 1;
  return out;
}

std::vector<std::size_t> search_vehicles(const RoadNetwork& net, NodeIndex agent, int level,
                                         std::span<const VehicleSnapshot> vehicles) {
  if (level < 0 || level > kMaxSearchLevel) throw ValidationError("search level must be 0..3");
  const auto hood = neighbors_khop(net, agent, level);
  std::vector<char> in_hood(net.node_count(), 0);
  for (auto n : hood) in_hood[n] = 1;
  std::vector<std::size_t> found;
  for (std::size_t v = 0; v < vehicles.size(); ++v)
    if (in_hood[vehicles[v].locator]) found.push_back(v);
  std::sort(found.begin(), found.end(), [&](std::size_t a, std::size_t b) {
    return vehicles[a].anchor.id < vehicles[b].anchor.id;
  });
  return found;
}

namespace {

struct AgentWork {
  NodeIndex node = 0;
  std::vector<UserState> riders;
  std::vector<VehicleSnapshot> vehicles;
  std::vector<Proposal> proposals;
  PairingStats stats;
  double seconds = 0.0;
};

}  // namespace

EpochResult run_epoch_distributed(const EpochSnapshot& snap, const DispatchConfig& cfg) {
  const RoadNetwork& net = *snap.net;
  EpochResult out;
  out.candidates_central = candidate_count(snap.riders, snap.vehicles);
  if (snap.riders.empty()) return out;

  // Each rider is handled by the intersection at its origin.
  std::map<NodeIndex, std::vector<UserState>> by_origin;
  for (const auto& r : snap.riders) by_origin[r.origin].push_back(r);
  std::vector<AgentWork> agents;
  for (auto& [node, riders] : by_origin) {
    AgentWork a;
    a.node = node;
    a.riders = std::move(riders);
    for (auto v : search_vehicles(net, node, cfg.search_level, snap.vehicles))
      a.vehicles.push_back(snap.vehicles[v]);
    agents.push_back(std::move(a));
  }

  if (cfg.log_messages) {
    for (const auto& a : agents) {
      const Endpoint self{Endpoint::Kind::Intersection, net.node_id(a.node)};
      for (auto b : neighbors_khop(net, a.node, cfg.search_level)) {
        // The own inbound links are read locally: a report without a query.
        const Endpoint peer{Endpoint::Kind::Intersection, net.node_id(b)};
        std::int64_t count = 0;
        for (const auto& v : a.vehicles)
          if (v.locator == b) ++count;
        if (b != a.node) out.messages.push_back({snap.epoch, MessageType::VehicleQuery, self, peer});
        out.messages.push_back({snap.epoch, MessageType::VehicleReport, peer, self, count});
      }
    }
  }

  auto work = [&](AgentWork& a) {
    const auto start = Clock::now();
    a.proposals = match_candidates(a.riders, a.vehicles, snap.now_s, *snap.tt, cfg,
                                   static_cast<int>(a.node), &a.stats);
    a.seconds = seconds_since(start);
  };
  const int threads = std::max(1, std::min<int>(cfg.threads, static_cast<int>(agents.size())));
  if (threads == 1) {
    for (auto& a : agents) work(a);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = next++; i < agents.size(); i = next++) work(agents[i]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::vector<Proposal> all;
  double total = 0.0;
  for (auto& a : agents) {
    out.compute_max_s = std::max(out.compute_max_s, a.seconds);
    total += a.seconds;
    out.candidates_max_agent =
        std::max(out.candidates_max_agent, candidate_count(a.riders, a.vehicles));
    accumulate(out.pairing, a.stats);
    for (auto& p : a.proposals) {
      if (cfg.log_messages) {
        out.messages.push_back({snap.epoch, MessageType::AssignmentProposal,
                                {Endpoint::Kind::Intersection, net.node_id(a.node)},
                                {Endpoint::Kind::Vehicle, p.vehicle}});
      }
      all.push_back(std::move(p));
    }
  }
  out.active_agents = agents.size();
  out.compute_mean_s = total / static_cast<double>(agents.size());

  auto resolved = resolve_conflicts(std::move(all));
  if (cfg.log_messages) {
    auto decide = [&](const std::vector<Proposal>& ps, bool accepted) {
      for (const auto& p : ps) {
        DispatchMessage m{snap.epoch, MessageType::ProposalDecision,
                          {Endpoint::Kind::Vehicle, p.vehicle},
                          {Endpoint::Kind::Intersection, net.node_id(static_cast<NodeIndex>(p.agent))}};
        m.accepted = accepted;
        out.messages.push_back(m);
      }
    };
    decide(resolved.accepted, true);
    decide(resolved.rejected, false);
  }
  out.accepted = std::move(resolved.accepted);
  out.rejected = std::move(resolved.rejected);
  return out;
}

Resolution resolve_conflicts(std::vector<Proposal> proposals) {
  // A total order makes the outcome independent of arrival order. Within one
  // agent, proposals never share a user or a vehicle.
  auto tail = [](const Proposal& p) {
    return std::tuple(p.agent, p.vehicle, p.riders, p.passenger.value_or(-1));
  };
  std::sort(proposals.begin(), proposals.end(), [&](const Proposal& a, const Proposal& b) {
    if (a.psi != b.psi) return a.psi > b.psi;
    return tail(a) < tail(b);
  });
  Resolution out;
  std::set<UserId> users_taken;
  std::vector<Proposal> survivors;
  for (auto& p : proposals) {
    std::vector<UserId> involved = p.riders;
    if (p.passenger) involved.push_back(*p.passenger);
    const bool clash = std::any_of(involved.begin(), involved.end(),
                                   [&](UserId u) { return users_taken.count(u) > 0; });
    if (clash) {
      out.rejected.push_back(std::move(p));
      continue;
    }
    users_taken.insert(involved.begin(), involved.end());
    survivors.push_back(std::move(p));
  }

  std::sort(survivors.begin(), survivors.end(), [&](const Proposal& a, const Proposal& b) {
    if (a.vtts != b.vtts) return a.vtts > b.vtts;
    return tail(a) < tail(b);
  });
  std::set<VehicleId> vehicles_taken;
  for (auto& p : survivors) {
    if (!vehicles_taken.insert(p.vehicle).second) {
      out.rejected.push_back(std::move(p));
      continue;
    }
    out.accepted.push_back(std::move(p));
  }
  return out;
}

EpochResult run_epoch(const EpochSnapshot& snap, const DispatchConfig& cfg) {
  if (snap.net == nullptr || snap.tt == nullptr) throw ValidationError("snapshot without network");
  return cfg.mode == DispatchMode::Centralized ? run_epoch_centralized(snap, cfg)
                                                : run_epoch_distributed(snap, cfg);
}

}  // namespace ridepool
