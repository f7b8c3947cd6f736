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

#include "ridepool/demand.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "ridepool/error.hpp"
#include "ridepool/routing.hpp"

namespace ridepool {
namespace {

RoadNetwork small_grid() { return make_grid({3, 3, 400.0, 10.0, 0.125}); }

TEST(OdParseTest, RoundTripAndErrors) {
  const auto od = parse_od("# header\nOD 0 8 0 900 12.5\nOD 8 0 300 600 3\n");
  ASSERT_EQ(od.entries.size(), 2u);
  EXPECT_EQ(od.entries[1].from, 8);
  EXPECT_DOUBLE_EQ(od.entries[0].expected, 12.5);
  std::ostringstream out;
  write_od(out, od);
  EXPECT_EQ(parse_od(out.str()).entries.size(), 2u);

  try {
    parse_od("OD 0 8 0 900 1\nOD 1 2 x\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parse_od("OD 1 1 0 900 1\n"), ValidationError);
  EXPECT_THROW(parse_od("OD 1 2 900 0 1\n"), ValidationError);
  EXPECT_THROW(parse_od("OD 1 2 0 900 -1\n"), ValidationError);
  EXPECT_THROW(parse_od("TRIP 1 2 0 900 1\n"), ParseError);
}

TEST(DemandTest, PoissonMeanOverSeeds) {
  const auto net = small_grid();
  const OdSpec od{{{0, 8, 0.0, 900.0, 100.0}}};
  double sum = 0.0;
  constexpr int kSeeds = 1000;
  for (int s = 0; s < kSeeds; ++s) sum += generate_demand(net, od, 900.0, 1.0, s).size();
  EXPECT_NEAR(sum / kSeeds, 100.0, 3.0);
}

TEST(DemandTest, TripsSortedInsidePeriodAndInterval) {
  const auto net = small_grid();
  const OdSpec od{{{0, 8, 100.0, 500.0, 40.0}, {8, 0, 0.0, 2000.0, 40.0}}};
  const auto trips = generate_demand(net, od, 900.0, 0.5, 3);
  ASSERT_FALSE(trips.empty());
  for (std::size_t i = 0; i < trips.size(); ++i) {
    if (i > 0) EXPECT_LE(trips[i - 1].time_s, trips[i].time_s);
    EXPECT_LT(trips[i].time_s, 900.0);
    if (trips[i].origin == net.index_of(0)) {
      EXPECT_GE(trips[i].time_s, 100.0);
      EXPECT_LT(trips[i].time_s, 500.0);
    }
  }
}

TEST(DemandTest, ShareIsTheSharedFraction) {
  const auto net = small_grid();
  const auto od = uniform_od(net, 20000.0, 900.0);
  const auto trips = generate_demand(net, od, 900.0, 0.2, 9);
  double shared = 0;
  for (const auto& t : trips) shared += t.shared;
  EXPECT_NEAR(shared / trips.size(), 0.2, 0.02);
  for (const auto& t : generate_demand(net, od, 900.0, 0.0, 9)) EXPECT_FALSE(t.shared);
  EXPECT_THROW(generate_demand(net, od, 900.0, 1.5, 9), ValidationError);
}

TEST(DemandTest, SameSeedSameTrips) {
  const auto net = small_grid();
  const auto od = uniform_od(net, 500.0, 900.0);
  const auto a = generate_demand(net, od, 900.0, 0.3, 42);
  const auto b = generate_demand(net, od, 900.0, 0.3, 42);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].time_s, b[i].time_s);
    EXPECT_EQ(a[i].origin, b[i].origin);
    EXPECT_EQ(a[i].shared, b[i].shared);
  }
}

TEST(TimeWindowTest, LatestDepartureAndArrival) {
  const auto w = derive_time_windows(100.0, 300.0, 250.0);
  ASSERT_TRUE(w.has_value());
  EXPECT_DOUBLE_EQ(w->latest_departure_s, 400.0);
  EXPECT_DOUBLE_EQ(w->latest_arrival_s, 650.0);
  EXPECT_FALSE(derive_time_windows(0.0, 300.0, kNoPath).has_value());
  EXPECT_THROW(derive_time_windows(0.0, -1.0, 10.0), ValidationError);
}

TEST(RiderTest, DefaultFlexibilityIsFiveMinutes) {
  const Trip trip{0, 8, 60.0, true};
  const auto r = make_rider(3, trip, 300.0, 320.0);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->status, RiderStatus::Pending);
  EXPECT_DOUBLE_EQ(r->latest_departure_s - r->earliest_departure_s, 5 * 60.0);
  EXPECT_DOUBLE_EQ(r->latest_arrival_s, 60.0 + 300.0 + 320.0);
  EXPECT_THROW(make_rider(1, Trip{2, 2, 0.0, true}, 300.0, 0.0), ValidationError);
}

TEST(FleetTest, SeedsProportionalToSharedOrigins) {
  const auto net = small_grid();
  std::vector<Trip> demand;
  for (int i = 0; i < 75; ++i) demand.push_back({0, 8, 0.0, true});
  for (int i = 0; i < 25; ++i) demand.push_back({4, 8, 0.0, true});
  for (int i = 0; i < 500; ++i) demand.push_back({7, 8, 0.0, false});  // private: ignored
  double at0 = 0, at4 = 0, total = 0;
  for (int seed = 0; seed < 5; ++seed) {
    const auto fleet = seed_fleet(net, demand, 1000, seed);
    ASSERT_EQ(fleet.size(), 1000u);
    for (const auto& v : fleet) {
      at0 += v.node == 0;
      at4 += v.node == 4;
      EXPECT_TRUE(v.node == 0 || v.node == 4);
      EXPECT_TRUE(v.idle());
      EXPECT_EQ(v.capacity, kSharedCapacity);
    }
    total += 1000;
  }
  EXPECT_NEAR(at0 / total, 0.75, 0.03);
  EXPECT_NEAR(at4 / total, 0.25, 0.03);
}

TEST(FleetTest, UniformWithoutSharedDemand) {
  const auto net = small_grid();
  const auto fleet = seed_fleet(net, {}, 9000, 1);
  std::vector<int> count(net.node_count(), 0);
  for (const auto& v : fleet) ++count[v.node];
  for (int c : count) EXPECT_NEAR(c, 1000, 150);
  EXPECT_TRUE(seed_fleet(net, {}, 0, 1).empty());
  EXPECT_THROW(seed_fleet(net, {}, -1, 1), ValidationError);
}

TEST(ExpiryTest, ExpiresOnlyPastLatestDeparture) {
  std::vector<Rider> riders(3);
  for (int i = 0; i < 3; ++i) {
    riders[i].id = i;
    riders[i].latest_departure_s = 100.0 * (i + 1);
  }
  riders[2].status = RiderStatus::Finalized;
  const auto r = expire_requests(riders, 200.0);
  EXPECT_EQ(r.expired, (std::vector<UserId>{0}));
  EXPECT_EQ(r.still_pending, (std::vector<UserId>{1}));  // exactly at the limit stays
  EXPECT_EQ(riders[0].status, RiderStatus::Expired);
  EXPECT_EQ(riders[2].status, RiderStatus::Finalized);
}

}  // namespace
}  // namespace ridepool
