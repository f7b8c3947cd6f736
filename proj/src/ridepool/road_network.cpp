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

#include "ridepool/road_network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <queue>
#include <sstream>

#include "ridepool/error.hpp"

namespace ridepool {

namespace {

template <class T>
std::vector<std::size_t> bucket_offsets(std::size_t buckets, const std::vector<T>& keys) {
  std::vector<std::size_t> offsets(buckets + 1, 0);
  for (auto k : keys) ++offsets[k + 1];
  for (std::size_t i = 0; i < buckets; ++i) offsets[i + 1] += offsets[i];
  return offsets;
}

}  // namespace

RoadNetwork::RoadNetwork(std::vector<NodeRecord> nodes, std::vector<LinkRecord> links) {
  std::sort(nodes.begin(), nodes.end(),
            [](const NodeRecord& a, const NodeRecord& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i].id == nodes[i - 1].id)
      throw ValidationError("duplicate node id " + std::to_string(nodes[i].id));
  }
  node_ids_.reserve(nodes.size());
  positions_.reserve(nodes.size());
  for (const auto& n : nodes) {
    if (!std::isfinite(n.position.x) || !std::isfinite(n.position.y))
      throw ValidationError("node " + std::to_string(n.id) + " has non-finite coordinates");
    node_ids_.push_back(n.id);
    positions_.push_back(n.position);
  }

  std::sort(links.begin(), links.end(),
            [](const LinkRecord& a, const LinkRecord& b) { return a.id < b.id; });
  links_.reserve(links.size());
  for (std::size_t i = 0; i < links.size(); ++i) {
    const auto& r = links[i];
    if (i > 0 && r.id == links[i - 1].id)
      throw ValidationError("duplicate link id " + std::to_string(r.id));
    auto from = find_node(r.from);
    auto to = find_node(r.to);
    if (!from)
      throw ValidationError("link " + std::to_string(r.id) + " references missing node " +
                            std::to_string(r.from));
    if (!to)
      throw ValidationError("link " + std::to_string(r.id) + " references missing node " +
                            std::to_string(r.to));
    if (*from == *to)
      throw ValidationError("link " + std::to_string(r.id) + " is a self-loop");
    if (!(r.length_m > 0.0) || !std::isfinite(r.length_m))
      throw ValidationError("link " + std::to_string(r.id) + " has non-positive length");
    if (!(r.free_flow_mps > 0.0) || !std::isfinite(r.free_flow_mps))
      throw ValidationError("link " + std::to_string(r.id) + " has non-positive speed");
    if (!(r.jam_density_vpm > 0.0) || !std::isfinite(r.jam_density_vpm))
      throw ValidationError("link " + std::to_string(r.id) + " has non-positive jam density");
    links_.push_back(Link{r.id, *from, *to, r.length_m, r.free_flow_mps, r.jam_density_vpm});
  }

  const std::size_t n = node_ids_.size();
  std::vector<NodeIndex> froms, tos;
  for (const auto& l : links_) {
    froms.push_back(l.from);
    tos.push_back(l.to);
  }
  out_offsets_ = bucket_offsets(n, froms);
  in_offsets_ = bucket_offsets(n, tos);
  out_links_.resize(links_.size());
  in_links_.resize(links_.size());
  {
    auto out_pos = out_offsets_;
    auto in_pos = in_offsets_;
    for (LinkIndex l = 0; l < links_.size(); ++l) {
      out_links_[out_pos[links_[l].from]++] = l;
      in_links_[in_pos[links_[l].to]++] = l;
    }
  }

  std::vector<std::vector<NodeIndex>> adj(n);
  for (const auto& l : links_) {
    adj[l.from].push_back(l.to);
    adj[l.to].push_back(l.from);
  }
  adj_offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& a = adj[i];
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    adj_offsets_[i + 1] = adj_offsets_[i] + a.size();
    adjacent_.insert(adjacent_.end(), a.begin(), a.end());
  }
}

std::optional<NodeIndex> RoadNetwork::find_node(NodeId id) const {
  auto it = std::lower_bound(node_ids_.begin(), node_ids_.end(), id);
  if (it == node_ids_.end() || *it != id) return std::nullopt;
  return static_cast<NodeIndex>(it - node_ids_.begin());
}

NodeIndex RoadNetwork::index_of(NodeId id) const {
  auto n = find_node(id);
  if (!n) throw ValidationError("unknown node " + std::to_string(id));
  return *n;
}

std::optional<LinkIndex> RoadNetwork::find_link(LinkId id) const {
  auto it = std::lower_bound(links_.begin(), links_.end(), id,
                             [](const Link& l, LinkId v) { return l.id < v; });
  if (it == links_.end() || it->id != id) return std::nullopt;
  return static_cast<LinkIndex>(it - links_.begin());
}

std::vector<NodeRecord> RoadNetwork::node_records() const {
  std::vector<NodeRecord> out;
  out.reserve(node_ids_.size());
  for (std::size_t i = 0; i < node_ids_.size(); ++i) out.push_back({node_ids_[i], positions_[i]});
  return out;
}

std::vector<LinkRecord> RoadNetwork::link_records() const {
  std::vector<LinkRecord> out;
  out.reserve(links_.size());
  for (const auto& l : links_) {
    out.push_back({l.id, node_ids_[l.from], node_ids_[l.to], l.length_m, l.free_flow_mps,
                   l.jam_density_vpm});
  }
  return out;
}

RoadNetwork parse_network(std::istream& in) {
  std::vector<NodeRecord> nodes;
  std::vector<LinkRecord> links;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag[0] == '#') continue;
    if (tag == "NODE") {
      NodeRecord r;
      if (!(ss >> r.id >> r.position.x >> r.position.y)) throw ParseError("bad NODE record", lineno);
      nodes.push_back(r);
    } else if (tag == "LINK") {
      LinkRecord r;
      if (!(ss >> r.id >> r.from >> r.to >> r.length_m >> r.free_flow_mps >> r.jam_density_vpm))
        throw ParseError("bad LINK record", lineno);
      links.push_back(r);
    } else {
      throw ParseError("unknown record '" + tag + "'", lineno);
    }
    std::string extra;
    if (ss >> extra) throw ParseError("trailing field '" + extra + "'", lineno);
  }
  return RoadNetwork(std::move(nodes), std::move(links));
}

RoadNetwork parse_network(const std::string& text) {
  std::istringstream in(text);
  return parse_network(in);
}

RoadNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open network file " + path.string());
  return parse_network(in);
}

void write_network(std::ostream& out, const RoadNetwork& net) {
  std::ostringstream buf;
  buf << std::setprecision(17);
  for (const auto& n : net.node_records())
    buf << "NODE " << n.id << ' ' << n.position.x << ' ' << n.position.y << '\n';
  for (const auto& l : net.link_records()) {
    buf << "LINK " << l.id << ' ' << l.from << ' ' << l.to << ' ' << l.length_m << ' '
        << l.free_flow_mps << ' ' << l.jam_density_vpm << '\n';
  }
  out << buf.str();
}

RoadNetwork make_grid(const GridSpec& spec) {
  if (spec.rows < 1 || spec.cols < 1) throw ValidationError("grid needs at least one row and column");
  if (!(spec.cell_m > 0.0)) throw ValidationError("grid cell size must be positive");
  if (!(spec.speed_mps > 0.0)) throw ValidationError("grid speed must be positive");
  std::vector<NodeRecord> nodes;
  std::vector<LinkRecord> links;
  auto id = [&](int r, int c) { return static_cast<NodeId>(r) * spec.cols + c; };
  for (int r = 0; r < spec.rows; ++r)
    for (int c = 0; c < spec.cols; ++c) nodes.push_back({id(r, c), {c * spec.cell_m, r * spec.cell_m}});
  LinkId next = 0;
  auto add = [&](NodeId a, NodeId b) {
    links.push_back({next++, a, b, spec.cell_m, spec.speed_mps, spec.jam_density_vpm});
  };
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      if (c + 1 < spec.cols) {
        add(id(r, c), id(r, c + 1));
        add(id(r, c + 1), id(r, c));
      }
      if (r + 1 < spec.rows) {
        add(id(r, c), id(r + 1, c));
        add(id(r + 1, c), id(r, c));
      }
    }
  }
  return RoadNetwork(std::move(nodes), std::move(links));
}

NodeIndex nearest_node(const RoadNetwork& net, Point p) {
  if (net.empty()) throw ValidationError("nearest_node on an empty network");
  NodeIndex best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (NodeIndex n = 0; n < net.node_count(); ++n) {
    const double dx = net.position(n).x - p.x;
    const double dy = net.position(n).y - p.y;
    const double d2 = dx * dx + dy * dy;
    if (d2 < best_d2) {  // strict: earlier (smaller id) wins ties
      best_d2 = d2;
      best = n;
    }
  }
  return best;
}

std::vector<int> hop_distances(const RoadNetwork& net, NodeIndex node) {
  std::vector<int> dist(net.node_count(), -1);
  std::queue<NodeIndex> frontier;
  dist[node] = 0;
  frontier.push(node);
  while (!frontier.empty()) {
    auto u = frontier.front();
    frontier.pop();
    for (auto v : net.adjacent(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

std::vector<NodeIndex> neighbors_khop(const RoadNetwork& net, NodeIndex node, int k) {
  if (k < 0) throw ValidationError("hop count must be non-negative");
  std::vector<NodeIndex> out{node};
  std::vector<NodeIndex> frontier{node};
  std::vector<char> seen(net.node_count(), 0);
  seen[node] = 1;
  for (int hop = 0; hop < k && !frontier.empty(); ++hop) {
    std::vector<NodeIndex> next;
    for (auto u : frontier) {
      for (auto v : net.adjacent(u)) {
        if (!seen[v]) {
          seen[v] = 1;
          next.push_back(v);
          out.push_back(v);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double greenshields_speed(const Link& link, double occupancy, double v_min_mps) {
  const double density = std::max(0.0, occupancy) / link.length_m;
  const double v = link.free_flow_mps * (1.0 - density / link.jam_density_vpm);
  return std::min(link.free_flow_mps, std::max(v_min_mps, v));
}

TrafficState::TrafficState(const RoadNetwork& net, double v_min_mps) : v_min_(v_min_mps) {
  if (!(v_min_mps > 0.0)) throw ValidationError("minimum speed must be positive");
  states_.reserve(net.link_count());
  for (const auto& l : net.links()) states_.push_back({0.0, l.free_flow_mps});
}

double TrafficState::update_link_speed(const RoadNetwork& net, LinkIndex l, double occupancy) {
  if (occupancy < 0.0) throw ValidationError("occupancy must be non-negative");
  auto& s = states_[l];
  s.occupancy = occupancy;
  s.speed_mps = greenshields_speed(net.link(l), occupancy, v_min_);
  return s.speed_mps;
}

std::vector<double> TrafficState::link_times(const RoadNetwork& net) const {
  std::vector<double> t(net.link_count());
  for (LinkIndex l = 0; l < t.size(); ++l) t[l] = net.link(l).length_m / states_[l].speed_mps;
  return t;
}

std::vector<double> free_flow_times(const RoadNetwork& net) {
  std::vector<double> t(net.link_count());
  for (LinkIndex l = 0; l < t.size(); ++l) t[l] = net.link(l).free_flow_time_s();
  return t;
}

}  // namespace ridepool
