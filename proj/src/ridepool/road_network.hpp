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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ridepool {

// External identifiers as they appear in network files.
using NodeId = std::int64_t;
using LinkId = std::int64_t;

// Dense internal indices. Nodes and links are stored sorted by their
// external id, so index order and id order coincide.
using NodeIndex = std::uint32_t;
using LinkIndex = std::uint32_t;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct NodeRecord {
  NodeId id = 0;
  Point position;
};

struct LinkRecord {
  LinkId id = 0;
  NodeId from = 0;
  NodeId to = 0;
  double length_m = 0.0;
  double free_flow_mps = 0.0;
  double jam_density_vpm = 0.0;
};

struct Link {
  LinkId id = 0;
  NodeIndex from = 0;
  NodeIndex to = 0;
  double length_m = 0.0;
  double free_flow_mps = 0.0;
  double jam_density_vpm = 0.0;

  double free_flow_time_s() const { return length_m / free_flow_mps; }
};

/// Directed road graph with planar coordinates (meters).
///
/// Construction validates every invariant: unique ids, link endpoints that
/// exist, positive length, speed and jam density. Immutable afterwards, so
/// concurrent readers are safe.
class RoadNetwork {
 public:
  RoadNetwork() = default;
  RoadNetwork(std::vector<NodeRecord> nodes, std::vector<LinkRecord> links);

  std::size_t node_count() const { return node_ids_.size(); }
  std::size_t link_count() const { return links_.size(); }
  bool empty() const { return node_ids_.empty(); }

  NodeId node_id(NodeIndex n) const { return node_ids_[n]; }
  const Point& position(NodeIndex n) const { return positions_[n]; }
  std::optional<NodeIndex> find_node(NodeId id) const;
  // Throws ValidationError when the id is unknown.
  NodeIndex index_of(NodeId id) const;

  const Link& link(LinkIndex l) const { return links_[l]; }
  std::span<const Link> links() const { return links_; }
  std::optional<LinkIndex> find_link(LinkId id) const;

  std::span<const LinkIndex> outbound(NodeIndex n) const {
    return {out_links_.data() + out_offsets_[n], out_links_.data() + out_offsets_[n + 1]};
  }
  std::span<const LinkIndex> inbound(NodeIndex n) const {
    return {in_links_.data() + in_offsets_[n], in_links_.data() + in_offsets_[n + 1]};
  }
  // Nodes joined to n by a link in either direction, ascending, no duplicates.
  std::span<const NodeIndex> adjacent(NodeIndex n) const {
    return {adjacent_.data() + adj_offsets_[n], adjacent_.data() + adj_offsets_[n + 1]};
  }

  std::vector<NodeRecord> node_records() const;
  std::vector<LinkRecord> link_records() const;

 private:
  std::vector<NodeId> node_ids_;
  std::vector<Point> positions_;
  std::vector<Link> links_;
  std::vector<std::size_t> out_offsets_, in_offsets_, adj_offsets_;
  std::vector<LinkIndex> out_links_, in_links_;
  std::vector<NodeIndex> adjacent_;
};

// Text format, one record per line:
//   NODE id x y
//   LINK id from to length_m ffspeed_mps jam_density_vpm
// Blank lines and lines starting with '#' are ignored.
RoadNetwork parse_network(std::istream& in);
RoadNetwork parse_network(const std::string& text);
RoadNetwork load_network(const std::filesystem::path& path);
void write_network(std::ostream& out, const RoadNetwork& net);

struct GridSpec {
  int rows = 0;
  int cols = 0;
  double cell_m = 0.0;
  double speed_mps = 0.0;
  double jam_density_vpm = 0.125;
};

// rows x cols lattice with a directed link each way between orthogonal
// neighbours. Node id = r * cols + c at (c * cell, r * cell).
RoadNetwork make_grid(const GridSpec& spec);

// Euclidean nearest node, ties to the smallest NodeId. Requires a non-empty
// network.
NodeIndex nearest_node(const RoadNetwork& net, Point p);

// Every node within undirected hop distance <= k of `node`, including it,
// ascending by index.
std::vector<NodeIndex> neighbors_khop(const RoadNetwork& net, NodeIndex node, int k);

// Undirected hop distance from `node` to every node, -1 where unreachable.
std::vector<int> hop_distances(const RoadNetwork& net, NodeIndex node);

inline constexpr double kDefaultMinSpeedMps = 1.0;

// Greenshields speed-density relation with a floor:
//   v = max(v_min, v_free * (1 - (occupancy / length) / jam_density))
double greenshields_speed(const Link& link, double occupancy, double v_min_mps);

struct LinkState {
  double occupancy = 0.0;
  double speed_mps = 0.0;
};

/// Per-link occupancy and space-mean speed. Mutated by the simulation tick
/// only; everyone else reads snapshots of link travel times.
class TrafficState {
 public:
  TrafficState() = default;
  TrafficState(const RoadNetwork& net, double v_min_mps = kDefaultMinSpeedMps);

  const LinkState& state(LinkIndex l) const { return states_[l]; }
  double v_min() const { return v_min_; }

  // Sets the link occupancy and recomputes its speed; returns the new speed.
  double update_link_speed(const RoadNetwork& net, LinkIndex l, double occupancy);

  // Traversal time of every link at its current speed.
  std::vector<double> link_times(const RoadNetwork& net) const;

 private:
  std::vector<LinkState> states_;
  double v_min_ = kDefaultMinSpeedMps;
};

// Link traversal times at free-flow speed.
std::vector<double> free_flow_times(const RoadNetwork& net);

}  // namespace ridepool
