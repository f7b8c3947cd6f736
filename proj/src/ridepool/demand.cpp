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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <tuple>

#include "ridepool/error.hpp"
#include "ridepool/routing.hpp"

namespace ridepool {

namespace {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

constexpr std::uint64_t kDemandStream = 1;
constexpr std::uint64_t kShareStream = 2;
constexpr std::uint64_t kFleetStream = 3;

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return make_rng(seed, stream)();
}

OdSpec parse_od(std::istream& in) {
  OdSpec spec;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag[0] == '#') continue;
    if (tag != "OD") throw ParseError("unknown record '" + tag + "'", lineno);
    OdEntry e;
    if (!(ss >> e.from >> e.to >> e.t_start_s >> e.t_end_s >> e.expected))
      throw ParseError("bad OD record", lineno);
    std::string extra;
    if (ss >> extra) throw ParseError("trailing field '" + extra + "'", lineno);
    if (e.from == e.to) throw ValidationError("OD line " + std::to_string(lineno) + ": origin equals destination");
    if (!(e.t_end_s > e.t_start_s)) throw ValidationError("OD line " + std::to_string(lineno) + ": empty time interval");
    if (!(e.expected >= 0.0)) throw ValidationError("OD line " + std::to_string(lineno) + ": negative rate");
    spec.entries.push_back(e);
  }
  return spec;
}

OdSpec parse_od(const std::string& text) {
  std::istringstream in(text);
  return parse_od(in);
}

OdSpec load_od(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open demand file " + path.string());
  return parse_od(in);
}

void write_od(std::ostream& out, const OdSpec& spec) {
  std::ostringstream buf;
  buf << std::setprecision(17);
  for (const auto& e : spec.entries)
    buf << "OD " << e.from << ' ' << e.to << ' ' << e.t_start_s << ' ' << e.t_end_s << ' ' << e.expected << '\n';
  out << buf.str();
}

OdSpec uniform_od(const RoadNetwork& net, double total, double load_period_s) {
  OdSpec spec;
  const std::size_t n = net.node_count();
  if (n < 2 || total <= 0.0) return spec;
  const double per_pair = total / static_cast<double>(n * (n - 1));
  spec.entries.reserve(n * (n - 1));
  for (NodeIndex a = 0; a < n; ++a)
    for (NodeIndex b = 0; b < n; ++b)
      if (a != b) spec.entries.push_back({net.node_id(a), net.node_id(b), 0.0, load_period_s, per_pair});
  return spec;
}

std::vector<Trip> generate_demand(const RoadNetwork& net, const OdSpec& od, double load_period_s,
                                  double share, std::uint64_t seed) {
  if (!(share >= 0.0 && share <= 1.0)) throw ValidationError("share must lie in [0, 1]");
  if (!(load_period_s > 0.0)) throw ValidationError("load period must be positive");
  auto rng = make_rng(seed, kDemandStream);
  std::vector<Trip> trips;
  for (const auto& e : od.entries) {
    if (e.expected < 0.0) throw ValidationError("negative OD rate");
    if (e.expected == 0.0) continue;
    const NodeIndex from = net.index_of(e.from);
    const NodeIndex to = net.index_of(e.to);
    const double lo = std::max(0.0, e.t_start_s);
    const double hi = std::min(load_period_s, e.t_end_s);
    const double span = e.t_end_s - e.t_start_s;
    for (double b = std::floor(lo / kDemandBucketS) * kDemandBucketS; b < hi; b += kDemandBucketS) {
      const double b_lo = std::max(lo, b);
      const double b_hi = std::min(hi, b + kDemandBucketS);
      if (b_hi <= b_lo) continue;
      const double lambda = e.expected * (b_hi - b_lo) / span;
      std::poisson_distribution<int> count(lambda);
      std::uniform_real_distribution<double> when(b_lo, b_hi);
      const int k = count(rng);
      for (int i = 0; i < k; ++i) trips.push_back({from, to, when(rng), false});
    }
  }
  std::sort(trips.begin(), trips.end(), [](const Trip& a, const Trip& b) {
    return std::tie(a.time_s, a.origin, a.destination) < std::tie(b.time_s, b.origin, b.destination);
  });
  auto share_rng = make_rng(seed, kShareStream);
  std::bernoulli_distribution pick(share);
  for (auto& t : trips) t.shared = pick(share_rng);
  return trips;
}

std::optional<TimeWindows> derive_time_windows(double earliest_departure_s, double flexibility_s,
                                               double direct_time_s) {
  if (flexibility_s < 0.0) throw ValidationError("flexibility must be non-negative");
  if (!reachable(direct_time_s)) return std::nullopt;
  const double latest = earliest_departure_s + flexibility_s;
  return TimeWindows{latest, latest + direct_time_s};
}

std::optional<Rider> make_rider(UserId id, const Trip& trip, double flexibility_s,
                                double direct_time_s) {
  if (trip.origin == trip.destination) throw ValidationError("rider origin equals destination");
  auto w = derive_time_windows(trip.time_s, flexibility_s, direct_time_s);
  if (!w) return std::nullopt;
  Rider r;
  r.id = id;
  r.origin = trip.origin;
  r.destination = trip.destination;
  r.request_time_s = trip.time_s;
  r.earliest_departure_s = trip.time_s;
  r.latest_departure_s = w->latest_departure_s;
  r.latest_arrival_s = w->latest_arrival_s;
  r.flexibility_s = flexibility_s;
  r.direct_time_s = direct_time_s;
  return r;
}

std::vector<Vehicle> seed_fleet(const RoadNetwork& net, std::span<const Trip> demand,
                                int fleet_size, std::uint64_t seed, int capacity) {
  if (fleet_size < 0) throw ValidationError("fleet size must be non-negative");
  std::vector<Vehicle> fleet;
  if (fleet_size == 0) return fleet;
  if (net.empty()) throw ValidationError("cannot seed a fleet on an empty network");
  std::vector<double> weight(net.node_count(), 0.0);
  bool any = false;
  for (const auto& t : demand) {
    if (!t.shared) continue;
    weight[t.origin] += 1.0;
    any = true;
  }
  if (!any) std::fill(weight.begin(), weight.end(), 1.0);
  auto rng = make_rng(seed, kFleetStream);
  std::discrete_distribution<std::size_t> where(weight.begin(), weight.end());
  fleet.reserve(static_cast<std::size_t>(fleet_size));
  for (int i = 0; i < fleet_size; ++i) {
    Vehicle v;
    v.id = i;
    v.capacity = capacity;
    v.node = static_cast<NodeIndex>(where(rng));
    fleet.push_back(std::move(v));
  }
  return fleet;
}

ExpiryResult expire_requests(std::span<Rider> riders, double now_s) {
  ExpiryResult out;
  for (auto& r : riders) {
    if (r.status != RiderStatus::Pending) continue;
    if (now_s > r.latest_departure_s) {
      r.status = RiderStatus::Expired;
      out.expired.push_back(r.id);
    } else {
      out.still_pending.push_back(r.id);
    }
  }
  return out;
}

}  // namespace ridepool
