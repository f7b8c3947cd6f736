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

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "ridepool/road_network.hpp"

namespace ridepool {

inline constexpr double kNoPath = std::numeric_limits<double>::infinity();

inline bool reachable(double travel_time_s) { return std::isfinite(travel_time_s); }

// All costs below are evaluated against one frozen vector of link traversal
// times (seconds), indexed by LinkIndex. Speeds are not re-evaluated en route.

// Single-source and single-target shortest travel times.
std::vector<double> times_from(const RoadNetwork& net, std::span<const double> link_times,
                               NodeIndex source);
std::vector<double> times_to(const RoadNetwork& net, std::span<const double> link_times,
                             NodeIndex target);

// Shortest travel time from -> to, kNoPath when unreachable, 0 when from == to.
double travel_time(const RoadNetwork& net, std::span<const double> link_times, NodeIndex from,
                   NodeIndex to);

struct Path {
  std::vector<NodeIndex> nodes;
  std::vector<LinkIndex> links;
  double time_s = 0.0;  // sum of the listed links' traversal times
};

// Minimum-time path. Among equal-time paths the lexicographically smallest
// node sequence wins; between parallel links the smallest LinkId wins.
std::optional<Path> shortest_path(const RoadNetwork& net, std::span<const double> link_times,
                                  NodeIndex from, NodeIndex to);

// Walks the tie-broken shortest path given the distance-to-target vector.
std::optional<Path> extract_path(const RoadNetwork& net, std::span<const double> link_times,
                                 std::span<const double> to_target, NodeIndex from, NodeIndex to);

/// All-pairs travel-time snapshot. Built once per matching time from the
/// current link speeds and shared read-only by every dispatcher.
class TravelTimeTable {
 public:
  TravelTimeTable() = default;
  TravelTimeTable(const RoadNetwork& net, std::span<const double> link_times);

  double operator()(NodeIndex from, NodeIndex to) const { return table_[from * n_ + to]; }
  std::size_t node_count() const { return n_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> table_;
};

/// Next-hop oracle for vehicles routing under the live link times. Caches one
/// reverse shortest-path tree per destination until the times change.
class Router {
 public:
  explicit Router(const RoadNetwork& net) : net_(&net) {}

  // Replaces the link times and drops every cached tree.
  void set_link_times(std::vector<double> link_times);
  std::span<const double> link_times() const { return times_; }

  // First link of the tie-broken shortest path, nullopt if at target or
  // unreachable.
  std::optional<LinkIndex> next_link(NodeIndex at, NodeIndex target);
  std::optional<Path> path(NodeIndex from, NodeIndex to);
  double time(NodeIndex from, NodeIndex to);

 private:
  const std::vector<double>& tree(NodeIndex target);

  const RoadNetwork* net_;
  std::vector<double> times_;
  std::unordered_map<NodeIndex, std::vector<double>> to_target_;
};

}  // namespace ridepool
