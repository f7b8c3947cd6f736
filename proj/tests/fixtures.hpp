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

#include <random>
#include <tuple>
#include <vector>

#include "ridepool/config.hpp"
#include "ridepool/road_network.hpp"

namespace ridepool::testing {

// Network from (from, to, seconds) triples: length equals the time at 1 m/s,
// so integer times stay exact under every summation order.
inline RoadNetwork timed_network(int nodes, const std::vector<std::tuple<int, int, int>>& links) {
  std::vector<NodeRecord> n;
  for (int i = 0; i < nodes; ++i) n.push_back({i, {static_cast<double>(i), 0.0}});
  std::vector<LinkRecord> l;
  LinkId id = 0;
  for (auto [a, b, t] : links) l.push_back({id++, a, b, static_cast<double>(t), 1.0, 0.125});
  return RoadNetwork(std::move(n), std::move(l));
}

// Strongly connected random network: a bidirectional ring plus random chords,
// integer link times in [1, max_t].
inline RoadNetwork random_network(std::mt19937_64& rng, int nodes, int chords, int max_t) {
  std::uniform_int_distribution<int> t(1, max_t);
  std::uniform_int_distribution<int> node(0, nodes - 1);
  std::vector<std::tuple<int, int, int>> links;
  for (int i = 0; i < nodes; ++i) {
    links.emplace_back(i, (i + 1) % nodes, t(rng));
    links.emplace_back((i + 1) % nodes, i, t(rng));
  }
  for (int i = 0; i < chords; ++i) {
    const int a = node(rng), b = node(rng);
    if (a != b) links.emplace_back(a, b, t(rng));
  }
  return timed_network(nodes, links);
}

// Small, fast grid scenario with wall-clock timing off.
inline ScenarioConfig small_scenario() {
  ScenarioConfig cfg;
  cfg.scenario = "test";
  cfg.grid_rows = 6;
  cfg.grid_cols = 6;
  cfg.demand_total = 400.0;
  cfg.share = 0.3;
  cfg.fleet_size = 10;
  cfg.load_period_s = 600.0;
  cfg.timing = false;
  return cfg;
}

}  // namespace ridepool::testing
