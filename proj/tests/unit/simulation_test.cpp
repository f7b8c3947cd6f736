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

#include "ridepool/simulation.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "fixtures.hpp"

namespace ridepool {
namespace {

struct Case {
  DispatchMode mode;
  int level;
  std::uint64_t seed;
};

class SimulationInvariants : public ::testing::TestWithParam<Case> {};

TEST_P(SimulationInvariants, HoldOnSmallGrid) {
  auto cfg = testing::small_scenario();
  cfg.dispatch.mode = GetParam().mode;
  cfg.dispatch.search_level = GetParam().level;
  cfg.seed = GetParam().seed;
  const auto r = run_scenario(cfg);
  const auto& c = r.counters;

  EXPECT_FALSE(c.truncated);
  EXPECT_GT(c.requests, 0);
  EXPECT_EQ(c.served + c.expired, c.requests);
  EXPECT_EQ(c.commit_late_pickups, 0);
  EXPECT_EQ(c.commit_late_dropoffs, 0);
  EXPECT_EQ(c.commit_capacity_violations, 0);
  EXPECT_EQ(c.occupancy_violations, 0);
  EXPECT_LE(c.max_occupancy, 2);

  // The log and the online counters agree.
  const auto& ind = r.indicators;
  EXPECT_EQ(ind.requests, c.requests);
  EXPECT_EQ(ind.served, c.served);
  EXPECT_EQ(ind.expired, c.expired);
  EXPECT_EQ(ind.assignments, c.assignments);
  EXPECT_NEAR(ind.shared_km * 1000.0, c.shared_odometer_m, 1e-6 * (1.0 + c.shared_odometer_m));
  EXPECT_NEAR(ind.vkt_km * cfg.fleet_size, ind.shared_km, 1e-9);
  EXPECT_NEAR(ind.noa * cfg.fleet_size, static_cast<double>(c.assignments), 1e-9);
  std::size_t assigned = 0;
  for (const auto& e : r.epochs) assigned += e.riders_assigned;
  EXPECT_EQ(static_cast<std::int64_t>(assigned), c.assignments);
  EXPECT_EQ(c.assignments, c.served);

  // Timing is off: compute times are exactly zero.
  EXPECT_EQ(ind.compute_max_s, 0.0);

  // Per-rider chronology.
  for (const auto& rec : r.riders) {
    if (rec.dropoff_s) {
      ASSERT_TRUE(rec.pickup_s.has_value());
      EXPECT_GE(*rec.pickup_s, rec.rider.request_time_s);
      EXPECT_GE(*rec.dropoff_s, *rec.pickup_s);
      EXPECT_EQ(rec.rider.status, RiderStatus::Finalized);
    }
    if (rec.rider.status == RiderStatus::Expired) EXPECT_FALSE(rec.vehicle.has_value());
  }

  // Events are globally time ordered.
  for (std::size_t i = 1; i < r.events.size(); ++i) EXPECT_LE(r.events[i - 1].t, r.events[i].t);
}

INSTANTIATE_TEST_SUITE_P(
    Modes, SimulationInvariants,
    ::testing::Values(Case{DispatchMode::Centralized, 3, 1}, Case{DispatchMode::Centralized, 3, 2},
                      Case{DispatchMode::Distributed, 0, 1}, Case{DispatchMode::Distributed, 1, 2},
                      Case{DispatchMode::Distributed, 3, 3}));

TEST(SimulationTest, OccupancyWithinCapacityAtEveryTick) {
  const auto cfg = testing::small_scenario();
  const auto inputs = load_inputs(cfg);
  auto demand = generate_demand(inputs.net, inputs.od, cfg.load_period_s, cfg.share, cfg.seed);
  auto fleet = seed_fleet(inputs.net, demand, cfg.fleet_size, cfg.seed);
  Simulation sim(inputs.net, cfg, std::move(demand), std::move(fleet));
  int ticks = 0;
  while (!sim.finished() && ticks < 20000) {
    const double before = sim.now();
    for (const auto& e : sim.step()) {
      EXPECT_GE(e.t, before);
      EXPECT_LE(e.t, before + cfg.tick_s);
    }
    for (const auto& v : sim.vehicles()) {
      EXPECT_GE(v.occupancy(), 0);
      EXPECT_LE(v.occupancy(), 2);
      EXPECT_LE(v.assigned.size(), 2u);
      for (auto u : v.onboard)
        EXPECT_NE(std::find(v.assigned.begin(), v.assigned.end(), u), v.assigned.end());
    }
    ++ticks;
  }
  EXPECT_TRUE(sim.finished());
  for (const auto& v : sim.vehicles()) EXPECT_TRUE(v.idle());
}

TEST(SimulationTest, ConstantSpeedsMeanNoLateStops) {
  // Huge jam density and no background traffic keep every link at free flow,
  // so executed times equal the commit-time plan.
  auto cfg = testing::small_scenario();
  cfg.grid_jam_vpm = 1e9;
  cfg.background_traffic = false;
  for (auto mode : {DispatchMode::Centralized, DispatchMode::Distributed}) {
    cfg.dispatch.mode = mode;
    const auto r = run_scenario(cfg);
    EXPECT_EQ(r.counters.late_pickups, 0);
    EXPECT_EQ(r.counters.late_dropoffs, 0);
    EXPECT_EQ(r.counters.private_trips, 0);
    for (const auto& rec : r.riders) {
      if (!rec.dropoff_s) continue;
      EXPECT_LE(*rec.pickup_s, rec.rider.latest_departure_s + 1e-6);
      EXPECT_LE(*rec.dropoff_s, rec.rider.latest_arrival_s + 1e-6);
    }
  }
}

TEST(SimulationTest, SameSeedSameLog) {
  auto cfg = testing::small_scenario();
  cfg.dispatch.mode = DispatchMode::Distributed;
  const auto a = run_scenario(cfg);
  cfg.dispatch.threads = 3;
  const auto b = run_scenario(cfg);
  EXPECT_EQ(a.events, b.events);
  cfg.seed = 99;
  EXPECT_NE(run_scenario(cfg).events, a.events);
}

TEST(SimulationTest, EpochsFollowTheMatchingInterval) {
  const auto r = run_scenario(testing::small_scenario());
  ASSERT_FALSE(r.epochs.empty());
  for (std::size_t i = 0; i < r.epochs.size(); ++i) {
    EXPECT_EQ(r.epochs[i].epoch, static_cast<int>(i));
    EXPECT_DOUBLE_EQ(r.epochs[i].t_s, 60.0 * static_cast<double>(i));
  }
  EXPECT_EQ(r.counters.epochs, static_cast<int>(r.epochs.size()));
}

TEST(SimulationTest, MessagesAreLogged) {
  auto cfg = testing::small_scenario();
  cfg.dispatch.mode = DispatchMode::Distributed;
  const auto r = run_scenario(cfg);
  std::map<std::string, int> n;
  for (const auto& e : r.events)
    if (e.kind == EventKind::Message) ++n[e.detail];
  EXPECT_GT(n["VehicleQuery"], 0);
  EXPECT_GT(n["VehicleReport"], 0);
  EXPECT_GT(n["AssignmentProposal"], 0);
  EXPECT_EQ(n["AssignmentProposal"], n["ProposalDecision"]);
  cfg.dispatch.log_messages = false;
  for (const auto& e : run_scenario(cfg).events) EXPECT_NE(e.kind, EventKind::Message);
}

TEST(SimulationTest, NoFleetServesNobody) {
  auto cfg = testing::small_scenario();
  cfg.fleet_size = 0;
  const auto r = run_scenario(cfg);
  EXPECT_EQ(r.counters.served, 0);
  EXPECT_EQ(r.counters.expired, r.counters.requests);
  EXPECT_FALSE(r.indicators.wt_min.has_value());
}

}  // namespace
}  // namespace ridepool
