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

#include "ridepool/routing.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

namespace ridepool {
namespace {

using testing::random_network;
using testing::timed_network;

TEST(RoutingTest, TriangleTakesTwoShortLinks) {
  // A=0, B=1, C=2.
  const auto net = timed_network(3, {{0, 1, 5}, {1, 2, 5}, {0, 2, 12}});
  const auto times = free_flow_times(net);
  EXPECT_DOUBLE_EQ(travel_time(net, times, 0, 2), 10.0);
  EXPECT_DOUBLE_EQ(oracle::path_search_time(net, times, 0, 2), 10.0);
  const auto p = shortest_path(net, times, 0, 2);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->nodes, (std::vector<NodeIndex>{0, 1, 2}));
  EXPECT_DOUBLE_EQ(p->time_s, 10.0);
}

TEST(RoutingTest, UnreachableIsNoPath) {
  const auto net = timed_network(3, {{0, 1, 5}});
  const auto times = free_flow_times(net);
  EXPECT_FALSE(reachable(travel_time(net, times, 1, 0)));
  EXPECT_FALSE(shortest_path(net, times, 2, 0).has_value());
  Router router(net);
  router.set_link_times(times);
  EXPECT_FALSE(router.next_link(1, 0).has_value());
  EXPECT_FALSE(router.next_link(0, 0).has_value());
}

TEST(RoutingTest, GridCornerToCornerIsManhattanOverSpeed) {
  const auto net = make_grid({10, 10, 400.0, 10.0, 0.125});
  const auto times = free_flow_times(net);
  EXPECT_DOUBLE_EQ(travel_time(net, times, net.index_of(0), net.index_of(99)), 18 * 400.0 / 10.0);
  const TravelTimeTable tt(net, times);
  EXPECT_DOUBLE_EQ(tt(net.index_of(99), net.index_of(0)), 720.0);
}

TEST(RoutingTest, TableMatchesFloydWarshallAndPathSearch) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto net = random_network(rng, 7, 8, 9);
    const auto times = free_flow_times(net);
    const TravelTimeTable tt(net, times);
    const auto fw = oracle::floyd_warshall(net, times);
    for (NodeIndex a = 0; a < net.node_count(); ++a) {
      for (NodeIndex b = 0; b < net.node_count(); ++b) {
        EXPECT_EQ(tt(a, b), fw[a][b]);
        EXPECT_EQ(tt(a, b), oracle::path_search_time(net, times, a, b));
      }
    }
  }
}

// Smallest node sequence among all shortest simple paths.
std::vector<NodeIndex> lexicographic_shortest(const RoadNetwork& net,
                                              const std::vector<double>& times, NodeIndex from,
                                              NodeIndex to) {
  const double best = oracle::path_search_time(net, times, from, to);
  std::vector<NodeIndex> chosen, cur{from};
  std::vector<char> seen(net.node_count(), 0);
  auto dfs = [&](auto&& self, NodeIndex at, double t) -> void {
    if (t > best) return;
    if (at == to) {
      if (t == best && (chosen.empty() || cur < chosen)) chosen = cur;
      return;
    }
    seen[at] = 1;
    for (LinkIndex l : net.outbound(at)) {
      const NodeIndex v = net.link(l).to;
      if (seen[v]) continue;
      cur.push_back(v);
      self(self, v, t + times[l]);
      cur.pop_back();
    }
    seen[at] = 0;
  };
  dfs(dfs, from, 0.0);
  return chosen;
}

TEST(RoutingTest, PathTieBreakIsLexicographic) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    // Tiny weight range forces many equal-time alternatives.
    const auto net = random_network(rng, 7, 10, 2);
    const auto times = free_flow_times(net);
    Router router(net);
    router.set_link_times(times);
    for (NodeIndex a = 0; a < net.node_count(); ++a) {
      for (NodeIndex b = 0; b < net.node_count(); ++b) {
        if (a == b) continue;
        const auto p = router.path(a, b);
        ASSERT_TRUE(p.has_value());
        EXPECT_EQ(p->nodes, lexicographic_shortest(net, times, a, b));
        EXPECT_EQ(p->time_s, router.time(a, b));
        EXPECT_EQ(router.next_link(a, b), std::optional<LinkIndex>(p->links.front()));
      }
    }
  }
}

TEST(RouterTest, NewLinkTimesInvalidateCachedTrees) {
  const auto net = timed_network(3, {{0, 1, 5}, {1, 2, 5}, {0, 2, 12}});
  Router router(net);
  router.set_link_times(free_flow_times(net));
  EXPECT_DOUBLE_EQ(router.time(0, 2), 10.0);
  router.set_link_times({5.0, 20.0, 12.0});
  EXPECT_DOUBLE_EQ(router.time(0, 2), 12.0);
  EXPECT_EQ(router.path(0, 2)->nodes, (std::vector<NodeIndex>{0, 2}));
}

}  // namespace
}  // namespace ridepool
