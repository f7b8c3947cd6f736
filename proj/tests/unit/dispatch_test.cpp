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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "ridepool/error.hpp"

namespace ridepool {
namespace {

class DispatchTest : public ::testing::Test {
 protected:
  RoadNetwork net = make_grid({5, 5, 400.0, 10.0, 0.125});
  TravelTimeTable tt{net, free_flow_times(net)};

  // Pending riders and idle vehicles placed at random nodes.
  EpochSnapshot snapshot(std::uint64_t seed, int riders, int vehicles) const {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<NodeIndex> node(0, 24);
    EpochSnapshot s;
    s.net = &net;
    s.tt = &tt;
    s.epoch = 3;
    s.now_s = 600.0;
    for (int i = 0; i < riders; ++i) {
      UserState u;
      u.id = i;
      u.origin = u.location = node(rng);
      do u.destination = node(rng);
      while (u.destination == u.origin);
      u.latest_departure_s = s.now_s + 300.0;
      u.latest_arrival_s = u.latest_departure_s + tt(u.origin, u.destination);
      s.riders.push_back(u);
    }
    for (int v = 0; v < vehicles; ++v) {
      VehicleSnapshot vs;
      vs.anchor = {100 + v, node(rng), 0.0, 2};
      vs.locator = vs.anchor.node;
      s.vehicles.push_back(vs);
    }
    return s;
  }
};

void expect_exclusive(const std::vector<Proposal>& accepted) {
  std::set<UserId> users;
  std::set<VehicleId> vehicles;
  for (const auto& p : accepted) {
    EXPECT_TRUE(vehicles.insert(p.vehicle).second);
    for (auto u : p.riders) EXPECT_TRUE(users.insert(u).second);
    if (p.passenger) EXPECT_TRUE(users.insert(*p.passenger).second);
  }
}

TEST_F(DispatchTest, SearchFindsVehicleAtItsHopDistance) {
  std::vector<VehicleSnapshot> vs(1);
  vs[0].anchor.id = 9;
  vs[0].locator = net.index_of(14);  // two hops from 12
  const NodeIndex agent = net.index_of(12);
  EXPECT_TRUE(search_vehicles(net, agent, 1, vs).empty());
  EXPECT_EQ(search_vehicles(net, agent, 2, vs).size(), 1u);
  EXPECT_THROW(search_vehicles(net, agent, 4, vs), ValidationError);
  EXPECT_THROW(search_vehicles(net, agent, -1, vs), ValidationError);
}

TEST_F(DispatchTest, VisibilityGrowsWithLevel) {
  const auto s = snapshot(1, 0, 25);
  for (NodeIndex agent = 0; agent < 25; ++agent) {
    std::vector<std::size_t> prev;
    for (int level = 0; level <= kMaxSearchLevel; ++level) {
      const auto found = search_vehicles(net, agent, level, s.vehicles);
      EXPECT_TRUE(std::includes(found.begin(), found.end(), prev.begin(), prev.end()));
      prev = found;
    }
  }
}

TEST_F(DispatchTest, CentralizedProposalsAreExclusiveAndFeasible) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = snapshot(seed, 12, 6);
    DispatchConfig cfg;
    const auto r = run_epoch(s, cfg);
    expect_exclusive(r.accepted);
    EXPECT_TRUE(r.rejected.empty());
    EXPECT_EQ(r.candidates_central, 18u);
    for (const auto& p : r.accepted) {
      const auto& v = *std::find_if(s.vehicles.begin(), s.vehicles.end(),
                                    [&](const auto& x) { return x.anchor.id == p.vehicle; });
      std::map<UserId, const UserState*> by_id;
      for (const auto& u : s.riders) by_id[u.id] = &u;
      const auto check = verify_schedule(
          v.anchor, p.schedule, s.now_s, 0, 2, [&](NodeIndex a, NodeIndex b) { return tt(a, b); },
          [&](const Stop& st) {
            const auto* u = by_id.at(st.user);
            return StopWindow{st.kind == StopKind::Pickup ? u->latest_departure_s
                                                          : u->latest_arrival_s};
          });
      EXPECT_EQ(check.late_pickups + check.late_dropoffs, 0);
      EXPECT_FALSE(check.capacity_exceeded);
    }
  }
}

TEST_F(DispatchTest, DistributedIsExclusiveAndThreadIndependent) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = snapshot(seed, 8, 4);
    DispatchConfig cfg;
    cfg.mode = DispatchMode::Distributed;
    const auto a = run_epoch(s, cfg);
    cfg.threads = 4;
    const auto b = run_epoch(s, cfg);
    expect_exclusive(a.accepted);
    ASSERT_EQ(a.accepted.size(), b.accepted.size());
    for (std::size_t i = 0; i < a.accepted.size(); ++i) {
      EXPECT_EQ(a.accepted[i].vehicle, b.accepted[i].vehicle);
      EXPECT_EQ(a.accepted[i].riders, b.accepted[i].riders);
      EXPECT_EQ(a.accepted[i].schedule, b.accepted[i].schedule);
    }
    EXPECT_EQ(a.messages.size(), b.messages.size());
    EXPECT_LE(a.candidates_max_agent, a.candidates_central);
  }
}

TEST_F(DispatchTest, SameSnapshotSameCommitments) {
  const auto s = snapshot(5, 8, 4);
  for (auto mode : {DispatchMode::Centralized, DispatchMode::Distributed}) {
    DispatchConfig cfg;
    cfg.mode = mode;
    const auto a = run_epoch(s, cfg), b = run_epoch(s, cfg);
    ASSERT_EQ(a.accepted.size(), b.accepted.size());
    for (std::size_t i = 0; i < a.accepted.size(); ++i) {
      EXPECT_EQ(a.accepted[i].vehicle, b.accepted[i].vehicle);
      EXPECT_EQ(a.accepted[i].schedule, b.accepted[i].schedule);
    }
  }
}

TEST_F(DispatchTest, LevelZeroMessagesStayLocal) {
  const auto s = snapshot(2, 6, 6);
  DispatchConfig cfg;
  cfg.mode = DispatchMode::Distributed;
  cfg.search_level = 0;
  const auto r = run_epoch(s, cfg);
  std::map<MessageType, std::size_t> n;
  for (const auto& m : r.messages) {
    ++n[m.type];
    EXPECT_EQ(m.epoch, 3);
  }
  EXPECT_EQ(n[MessageType::VehicleQuery], 0u);
  EXPECT_EQ(n[MessageType::VehicleReport], r.active_agents);
  EXPECT_EQ(n[MessageType::AssignmentProposal], r.accepted.size() + r.rejected.size());
  EXPECT_EQ(n[MessageType::ProposalDecision], r.accepted.size() + r.rejected.size());
}

TEST_F(DispatchTest, QueriesReachEveryNeighbour) {
  const auto s = snapshot(2, 6, 6);
  DispatchConfig cfg;
  cfg.mode = DispatchMode::Distributed;
  cfg.search_level = 1;
  const auto r = run_epoch(s, cfg);
  std::set<NodeIndex> agents;
  for (const auto& u : s.riders) agents.insert(u.origin);
  std::size_t expected = 0;
  for (auto a : agents) expected += neighbors_khop(net, a, 1).size() - 1;
  EXPECT_EQ(std::count_if(r.messages.begin(), r.messages.end(),
                          [](const auto& m) { return m.type == MessageType::VehicleQuery; }),
            static_cast<std::ptrdiff_t>(expected));
  EXPECT_EQ((Endpoint{Endpoint::Kind::Intersection, 12}.str()), "i2:12");
  EXPECT_EQ((Endpoint{Endpoint::Kind::Vehicle, 4}.str()), "veh:4");
}

TEST_F(DispatchTest, NoRidersNoWork) {
  const auto s = snapshot(1, 0, 3);
  for (auto mode : {DispatchMode::Centralized, DispatchMode::Distributed}) {
    DispatchConfig cfg;
    cfg.mode = mode;
    const auto r = run_epoch(s, cfg);
    EXPECT_TRUE(r.accepted.empty());
    EXPECT_EQ(r.compute_max_s, 0.0);
    EXPECT_EQ(r.candidates_central, 3u);
  }
}

TEST_F(DispatchTest, SingletonPassCanBeDisabled) {
  const auto s = snapshot(3, 1, 3);
  DispatchConfig cfg;
  EXPECT_EQ(run_epoch(s, cfg).accepted.size(), 1u);
  cfg.singleton_assign = false;
  EXPECT_TRUE(run_epoch(s, cfg).accepted.empty());
}

Proposal proposal(int agent, VehicleId v, std::vector<UserId> riders, double psi, double vtts) {
  Proposal p;
  p.agent = agent;
  p.vehicle = v;
  p.riders = std::move(riders);
  p.psi = psi;
  p.vtts = vtts;
  return p;
}

TEST(ResolveTest, UserConflictThenVehicleConflict) {
  std::vector<Proposal> ps{proposal(0, 1, {1, 2}, 0.9, 10.0), proposal(1, 2, {2, 3}, 0.8, 50.0),
                           proposal(2, 1, {4, 5}, 0.7, 20.0)};
  const auto r = resolve_conflicts(ps);
  ASSERT_EQ(r.accepted.size(), 1u);
  EXPECT_EQ(r.accepted[0].riders, (std::vector<UserId>{4, 5}));
  EXPECT_EQ(r.rejected.size(), 2u);
}

TEST(ResolveTest, OutcomeIndependentOfArrivalOrder) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> user(0, 9), vehicle(0, 4), level(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Proposal> ps;
    for (int i = 0; i < 10; ++i) {
      const int a = user(rng);
      int b = user(rng);
      while (b == a) b = user(rng);
      ps.push_back(proposal(i % 4, vehicle(rng), {std::min(a, b), std::max(a, b)}, level(rng) / 3.0,
                            level(rng) * 10.0));
    }
    const auto base = resolve_conflicts(ps);
    expect_exclusive(base.accepted);
    EXPECT_EQ(base.accepted.size() + base.rejected.size(), ps.size());
    for (int perm = 0; perm < 5; ++perm) {
      std::shuffle(ps.begin(), ps.end(), rng);
      const auto again = resolve_conflicts(ps);
      ASSERT_EQ(again.accepted.size(), base.accepted.size());
      for (std::size_t i = 0; i < base.accepted.size(); ++i) {
        EXPECT_EQ(again.accepted[i].agent, base.accepted[i].agent);
        EXPECT_EQ(again.accepted[i].vehicle, base.accepted[i].vehicle);
        EXPECT_EQ(again.accepted[i].riders, base.accepted[i].riders);
      }
    }
  }
}

}  // namespace
}  // namespace ridepool
