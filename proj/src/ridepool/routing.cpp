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

#include <algorithm>
#include <functional>
#include <queue>

namespace ridepool {

namespace {

using QueueEntry = std::pair<double, NodeIndex>;
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

// Two costs are treated as equal when they differ by accumulated rounding
// only.
bool same_cost(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

template <class Edges, class Other>
std::vector<double> dijkstra(const RoadNetwork& net, std::span<const double> link_times,
                             NodeIndex root, Edges edges, Other other_end) {
  std::vector<double> dist(net.node_count(), kNoPath);
  MinQueue queue;
  dist[root] = 0.0;
  queue.push({0.0, root});
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    for (LinkIndex l : edges(u)) {
      const NodeIndex v = other_end(l);
      const double nd = d + link_times[l];
      if (nd < dist[v]) {
        dist[v] = nd;
        queue.push({nd, v});
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<double> times_from(const RoadNetwork& net, std::span<const double> link_times,
                               NodeIndex source) {
  return dijkstra(
      net, link_times, source, [&](NodeIndex u) { return net.outbound(u); },
      [&](LinkIndex l) { return net.link(l).to; });
}

std::vector<double> times_to(const RoadNetwork& net, std::span<const double> link_times,
                             NodeIndex target) {
  return dijkstra(
      net, link_times, target, [&](NodeIndex u) { return net.inbound(u); },
      [&](LinkIndex l) { return net.link(l).from; });
}

double travel_time(const RoadNetwork& net, std::span<const double> link_times, NodeIndex from,
                   NodeIndex to) {
  if (from == to) return 0.0;
  return times_from(net, link_times, from)[to];
}

std::optional<Path> extract_path(const RoadNetwork& net, std::span<const double> link_times,
                                 std::span<const double> to_target, NodeIndex from, NodeIndex to) {
  if (!reachable(to_target[from])) return std::nullopt;
  Path path;
  path.nodes.push_back(from);
  NodeIndex u = from;
  while (u != to) {
    // Outbound links are stored in LinkId order; scan for the smallest next
    // node that stays on a shortest path, keeping the first (smallest id)
    // link among parallels.
    std::optional<LinkIndex> best;
    for (LinkIndex l : net.outbound(u)) {
      const NodeIndex v = net.link(l).to;
      if (!reachable(to_target[v])) continue;
      if (!same_cost(link_times[l] + to_target[v], to_target[u])) continue;
      if (!best || v < net.link(*best).to) best = l;
    }
    if (!best) return std::nullopt;  // only reachable through rounding noise
    path.links.push_back(*best);
    path.time_s += link_times[*best];
    u = net.link(*best).to;
    path.nodes.push_back(u);
    if (path.nodes.size() > net.node_count()) return std::nullopt;
  }
  return path;
}

std::optional<Path> shortest_path(const RoadNetwork& net, std::span<const double> link_times,
                                  NodeIndex from, NodeIndex to) {
  if (from == to) return Path{{from}, {}, 0.0};
  auto to_target = times_to(net, link_times, to);
  return extract_path(net, link_times, to_target, from, to);
}

TravelTimeTable::TravelTimeTable(const RoadNetwork& net, std::span<const double> link_times)
    : n_(net.node_count()), table_(n_ * n_, kNoPath) {
  for (NodeIndex s = 0; s < n_; ++s) {
    auto row = times_from(net, link_times, s);
    std::copy(row.begin(), row.end(), table_.begin() + static_cast<std::ptrdiff_t>(s * n_));
  }
}

void Router::set_link_times(std::vector<double> link_times) {
  times_ = std::move(link_times);
  to_target_.clear();
}

const std::vector<double>& Router::tree(NodeIndex target) {
  auto it = to_target_.find(target);
  if (it == to_target_.end()) it = to_target_.emplace(target, times_to(*net_, times_, target)).first;
  return it->second;
}

std::optional<LinkIndex> Router::next_link(NodeIndex at, NodeIndex target) {
  if (at == target) return std::nullopt;
  const auto& dist = tree(target);
  if (!reachable(dist[at])) return std::nullopt;
  std::optional<LinkIndex> best;
  for (LinkIndex l : net_->outbound(at)) {
    const NodeIndex v = net_->link(l).to;
    if (!reachable(dist[v]) || !same_cost(times_[l] + dist[v], dist[at])) continue;
    if (!best || v < net_->link(*best).to) best = l;
  }
  return best;
}

std::optional<Path> Router::path(NodeIndex from, NodeIndex to) {
  if (from == to) return Path{{from}, {}, 0.0};
  return extract_path(*net_, times_, tree(to), from, to);
}

double Router::time(NodeIndex from, NodeIndex to) {
  if (from == to) return 0.0;
  return tree(to)[from];
}

}  // namespace ridepool
