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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ridepool/error.hpp"

namespace ridepool {

namespace {

constexpr double kLateTolerance = 1e-6;

const char* assignment_label(ProposalKind k) {
  switch (k) {
    case ProposalKind::PairToIdle:
      return "pair";
    case ProposalKind::TypeB:
      return "insertion";
    case ProposalKind::Singleton:
      return "singleton";
  }
  return "?";
}

}  // namespace

Simulation::Simulation(const RoadNetwork& net, const ScenarioConfig& cfg, std::vector<Trip> demand,
                       std::vector<Vehicle> fleet)
    : net_(net),
      cfg_(cfg),
      demand_(std::move(demand)),
      vehicles_(std::move(fleet)),
      traffic_(net, cfg.v_min_mps),
      router_(net),
      link_count_(net.link_count(), 0) {
  cfg_.validate();
  std::stable_sort(demand_.begin(), demand_.end(),
                   [](const Trip& a, const Trip& b) { return a.time_s < b.time_s; });
  for (std::size_t i = 0; i < vehicles_.size(); ++i) {
    if (vehicles_[i].id != static_cast<VehicleId>(i))
      throw ValidationError("vehicle ids must be 0..n-1 in order");
    if (vehicles_[i].link) ++link_count_[*vehicles_[i].link];
  }
  ticks_per_epoch_ = std::llround(cfg_.delta_s / cfg_.tick_s);
  router_.set_link_times(traffic_.link_times(net_));
}

VehicleAnchor Simulation::anchor_of(const Vehicle& v) const {
  VehicleAnchor a;
  a.id = v.id;
  a.free_seats = v.free_seats();
  if (v.link) {
    const Link& l = net_.link(*v.link);
    a.node = l.to;
    a.delay_s = (l.length_m - v.offset_m) / traffic_.state(*v.link).speed_mps;
  } else {
    a.node = v.node;
  }
  return a;
}

EpochSnapshot Simulation::snapshot(const TravelTimeTable& tt) const {
  EpochSnapshot s;
  s.net = &net_;
  s.tt = &tt;
  s.epoch = epoch_;
  s.now_s = now_s_;
  for (const auto& rec : riders_) {
    const Rider& r = rec.rider;
    if (r.status != RiderStatus::Pending) continue;
    UserState u;
    u.id = r.id;
    u.kind = UserKind::Rider;
    u.origin = r.origin;
    u.destination = r.destination;
    u.location = r.origin;
    u.latest_departure_s = r.latest_departure_s;
    u.latest_arrival_s = r.latest_arrival_s;
    s.riders.push_back(u);
  }
  for (const auto& v : vehicles_) {
    if (!v.available()) continue;
    VehicleSnapshot vs;
    vs.anchor = anchor_of(v);
    vs.locator = vs.anchor.node;
    vs.idle = v.idle();
    if (v.assigned.size() == 1) {
      const Rider& r = riders_[static_cast<std::size_t>(v.assigned.front())].rider;
      UserState p;
      p.id = r.id;
      p.kind = UserKind::Passenger;
      p.origin = r.origin;
      p.destination = r.destination;
      p.onboard = v.is_onboard(r.id);
      p.location = p.onboard ? vs.anchor.node : r.origin;
      p.location_delay_s = p.onboard ? vs.anchor.delay_s : 0.0;
      p.latest_departure_s = r.latest_departure_s;
      p.latest_arrival_s = r.latest_arrival_s;
      p.vehicle = v.id;
      p.vehicle_free_seats = v.free_seats();
      vs.passenger = p;
    }
    s.vehicles.push_back(std::move(vs));
  }
  return s;
}

void Simulation::commit(const Proposal& p) {
  if (p.vehicle < 0 || static_cast<std::size_t>(p.vehicle) >= vehicles_.size())
    throw std::logic_error("proposal for unknown vehicle");
  Vehicle& v = vehicles_[static_cast<std::size_t>(p.vehicle)];
  const VehicleAnchor anchor = anchor_of(v);
  const int occupancy = v.occupancy();
  for (UserId u : p.riders) {
    auto& rec = riders_[static_cast<std::size_t>(u)];
    if (rec.rider.status != RiderStatus::Pending) throw std::logic_error("rider assigned twice");
    rec.rider.status = RiderStatus::Finalized;
    rec.vehicle = v.id;
    v.assigned.push_back(u);
    SimEvent e;
    e.t = now_s_;
    e.kind = EventKind::Assignment;
    e.vehicle = v.id;
    e.user = u;
    e.node = net_.node_id(rec.rider.origin);
    e.detail = assignment_label(p.kind);
    emit(std::move(e));
  }
  if (static_cast<int>(v.assigned.size()) > v.capacity) ++counters_.commit_capacity_violations;
  v.assignments += static_cast<int>(p.riders.size());
  counters_.assignments += static_cast<std::int64_t>(p.riders.size());
  v.schedule.assign(p.schedule.begin(), p.schedule.end());
  v.route.clear();
  if (!v.schedule.empty() && anchor.node != v.schedule.front().node) {
    const auto path = router_.path(anchor.node, v.schedule.front().node);
    if (!path) throw std::logic_error("committed stop is unreachable");
    v.route.assign(path->links.begin(), path->links.end());
  }

  // Independent replay of the committed schedule at commit-time speeds.
  const auto check = verify_schedule(
      anchor, p.schedule, now_s_, occupancy, v.capacity,
      [&](NodeIndex a, NodeIndex b) { return router_.time(a, b); },
      [&](const Stop& s) {
        const Rider& r = riders_[static_cast<std::size_t>(s.user)].rider;
        return StopWindow{s.kind == StopKind::Pickup ? r.latest_departure_s : r.latest_arrival_s};
      });
  counters_.commit_late_pickups += check.late_pickups;
  counters_.commit_late_dropoffs += check.late_dropoffs;
  if (check.capacity_exceeded) ++counters_.commit_capacity_violations;
  if (check.late_pickups + check.late_dropoffs > 0) {
    SimEvent e;
    e.t = now_s_;
    e.kind = EventKind::Violation;
    e.vehicle = v.id;
    e.detail = check.late_pickups > 0 ? "commit_pickup" : "commit_dropoff";
    emit(std::move(e));
  }
}

void Simulation::run_matching() {
  EpochRecord rec;
  rec.epoch = epoch_;
  rec.t_s = now_s_;

  std::vector<Rider> pending;
  for (const auto& r : riders_)
    if (r.rider.status == RiderStatus::Pending) pending.push_back(r.rider);
  const auto expiry = expire_requests(pending, now_s_);
  for (UserId u : expiry.expired) {
    auto& r = riders_[static_cast<std::size_t>(u)].rider;
    r.status = RiderStatus::Expired;
    SimEvent e;
    e.t = now_s_;
    e.kind = EventKind::Expiry;
    e.user = u;
    e.node = net_.node_id(r.origin);
    emit(std::move(e));
  }
  rec.expired = expiry.expired.size();
  counters_.expired += static_cast<std::int64_t>(expiry.expired.size());

  // The routing service: travel times for this matching time.
  const TravelTimeTable tt(net_, router_.link_times());
  const EpochSnapshot snap = snapshot(tt);
  rec.pending = snap.riders.size();
  rec.vehicles_available = snap.vehicles.size();

  EpochResult result = run_epoch(snap, cfg_.dispatch);
  rec.candidates_central = result.candidates_central;
  rec.candidates_max_agent = result.candidates_max_agent;
  rec.active_agents = result.active_agents;
  rec.accepted = result.accepted.size();
  rec.rejected = result.rejected.size();
  rec.proposals = rec.accepted + rec.rejected;
  if (cfg_.timing) {
    rec.compute_max_s = result.compute_max_s;
    rec.compute_mean_s = result.compute_mean_s;
  }
  for (const auto& m : result.messages) {
    SimEvent e;
    e.t = now_s_;
    e.kind = EventKind::Message;
    e.detail = to_string(m.type);
    e.epoch = m.epoch;
    e.sender = m.sender.str();
    e.receiver = m.receiver.str();
    if (m.type == MessageType::VehicleReport) e.count = m.count;
    if (m.type == MessageType::ProposalDecision) e.accepted = m.accepted;
    emit(std::move(e));
  }
  // Commit in a canonical order so the log does not depend on resolution
  // internals.
  std::sort(result.accepted.begin(), result.accepted.end(),
            [](const Proposal& a, const Proposal& b) { return a.vehicle < b.vehicle; });
  for (const auto& p : result.accepted) {
    commit(p);
    rec.riders_assigned += p.riders.size();
  }
  epochs_.push_back(rec);
  ++counters_.epochs;
  ++epoch_;
}

template <typename Agent>
void Simulation::enter(Agent& a, LinkIndex l, double t, bool private_vehicle) {
  a.link = l;
  a.offset_m = 0.0;
  a.link_enter_s = t;
  ++link_count_[l];
  SimEvent e;
  e.t = t;
  e.kind = EventKind::LinkEnter;
  e.vehicle = a.id;
  e.node = net_.node_id(a.node);
  e.link = net_.link(l).id;
  e.private_vehicle = private_vehicle;
  emit(std::move(e));
}

template <typename Agent, typename OnNode>
void Simulation::advance(Agent& a, double t, double t_end, bool private_vehicle, OnNode on_node) {
  if (!a.link) {
    const auto next = on_node(t);
    if (!next) return;
    enter(a, *next, t, private_vehicle);
  }
  while (true) {
    const Link& l = net_.link(*a.link);
    const double speed = traffic_.state(*a.link).speed_mps;
    const double remaining = l.length_m - a.offset_m;
    const double need = remaining / speed;
    if (t + need > t_end) {
      const double moved = std::min(remaining, speed * (t_end - t));
      a.offset_m += moved;
      a.odometer_m += moved;
      return;
    }
    t += need;
    a.odometer_m += remaining;
    --link_count_[*a.link];
    SimEvent e;
    e.t = t;
    e.kind = EventKind::LinkExit;
    e.vehicle = a.id;
    e.node = net_.node_id(l.to);
    e.link = l.id;
    e.private_vehicle = private_vehicle;
    e.dist_m = l.length_m;
    e.dur_s = t - a.link_enter_s;
    emit(std::move(e));
    a.node = l.to;
    a.link.reset();
    a.offset_m = 0.0;
    const auto next = on_node(t);
    if (!next) return;
    enter(a, *next, t, private_vehicle);
  }
}

void Simulation::execute_stop(Vehicle& v, const Stop& s, double t) {
  auto& rec = riders_[static_cast<std::size_t>(s.user)];
  SimEvent e;
  e.t = t;
  e.vehicle = v.id;
  e.user = s.user;
  e.node = net_.node_id(s.node);
  bool late = false;
  if (s.kind == StopKind::Pickup) {
    e.kind = EventKind::Pickup;
    v.onboard.push_back(s.user);
    rec.pickup_s = t;
    late = t > rec.rider.latest_departure_s + kLateTolerance;
    if (late) ++counters_.late_pickups;
  } else {
    e.kind = EventKind::Dropoff;
    std::erase(v.onboard, s.user);
    std::erase(v.assigned, s.user);
    rec.dropoff_s = t;
    ++counters_.served;
    late = t > rec.rider.latest_arrival_s + kLateTolerance;
    if (late) ++counters_.late_dropoffs;
  }
  emit(e);
  if (late) {
    SimEvent w = e;
    w.kind = EventKind::Violation;
    w.detail = s.kind == StopKind::Pickup ? "late_pickup" : "late_dropoff";
    emit(std::move(w));
  }
  counters_.max_occupancy = std::max(counters_.max_occupancy, v.occupancy());
  if (v.occupancy() > v.capacity) ++counters_.occupancy_violations;
}

std::optional<LinkIndex> Simulation::shared_next(Vehicle& v, double t) {
  while (!v.schedule.empty() && v.schedule.front().node == v.node) {
    const Stop s = v.schedule.front();
    v.schedule.pop_front();
    execute_stop(v, s, t);
    v.route.clear();  // re-resolved at every stop departure
  }
  if (v.schedule.empty()) {
    v.route.clear();
    return std::nullopt;
  }
  if (v.route.empty()) {
    const auto path = router_.path(v.node, v.schedule.front().node);
    if (!path || path->links.empty()) throw std::logic_error("next stop is unreachable");
    v.route.assign(path->links.begin(), path->links.end());
  }
  const LinkIndex l = v.route.front();
  v.route.pop_front();
  if (net_.link(l).from != v.node) throw std::logic_error("route does not start at the vehicle");
  return l;
}

void Simulation::spawn(const Trip& trip, double t_end) {
  if (trip.shared) {
    const auto id = static_cast<UserId>(riders_.size());
    const double direct = router_.time(trip.origin, trip.destination);
    auto rider = make_rider(id, trip, cfg_.flexibility_s, direct);
    if (!rider) {
      ++counters_.unreachable_requests;
      return;
    }
    riders_.push_back({*rider, std::nullopt, std::nullopt, std::nullopt});
    ++counters_.requests;
    SimEvent e;
    e.t = trip.time_s;
    e.kind = EventKind::Request;
    e.user = id;
    e.node = net_.node_id(trip.origin);
    e.direct_s = direct;
    emit(std::move(e));
    return;
  }
  if (!cfg_.background_traffic || trip.origin == trip.destination) return;
  if (!reachable(router_.time(trip.origin, trip.destination))) return;
  PrivateVehicle pv;
  pv.id = static_cast<std::int64_t>(private_.size());
  pv.destination = trip.destination;
  pv.node = trip.origin;
  private_.push_back(pv);
  ++counters_.private_trips;
  auto& ref = private_.back();
  advance(ref, trip.time_s, t_end, true, [&](double) -> std::optional<LinkIndex> {
    if (ref.node == ref.destination) {
      ref.active = false;
      return std::nullopt;
    }
    return router_.next_link(ref.node, ref.destination);
  });
  counters_.private_odometer_m += ref.odometer_m;
}

std::vector<SimEvent> Simulation::step() {
  tick_events_.clear();
  if (tick_ % ticks_per_epoch_ == 0) run_matching();
  const double t_end = static_cast<double>(tick_ + 1) * cfg_.tick_s;

  while (next_trip_ < demand_.size() && demand_[next_trip_].time_s < t_end)
    spawn(demand_[next_trip_++], t_end);

  for (auto& v : vehicles_) {
    const double before = v.odometer_m;
    advance(v, now_s_, t_end, false, [&](double t) { return shared_next(v, t); });
    counters_.shared_odometer_m += v.odometer_m - before;
  }
  for (auto& pv : private_) {
    if (!pv.active || !pv.link) continue;
    const double before = pv.odometer_m;
    advance(pv, now_s_, t_end, true, [&](double) -> std::optional<LinkIndex> {
      if (pv.node == pv.destination) {
        pv.active = false;
        return std::nullopt;
      }
      return router_.next_link(pv.node, pv.destination);
    });
    counters_.private_odometer_m += pv.odometer_m - before;
  }

  for (const auto& v : vehicles_) {
    counters_.max_occupancy = std::max(counters_.max_occupancy, v.occupancy());
    if (v.occupancy() < 0 || v.occupancy() > v.capacity) ++counters_.occupancy_violations;
  }
  for (std::size_t l = 0; l < link_count_.size(); ++l)
    traffic_.update_link_speed(net_, static_cast<LinkIndex>(l), link_count_[l]);
  router_.set_link_times(traffic_.link_times(net_));

  ++tick_;
  now_s_ = static_cast<double>(tick_) * cfg_.tick_s;
  counters_.end_s = now_s_;
  std::stable_sort(tick_events_.begin(), tick_events_.end(),
                   [](const SimEvent& a, const SimEvent& b) { return a.t < b.t; });
  return std::move(tick_events_);
}

bool Simulation::finished() const {
  if (next_trip_ < demand_.size() || now_s_ < cfg_.load_period_s) return false;
  for (const auto& r : riders_)
    if (r.rider.status == RiderStatus::Pending) return false;
  for (const auto& v : vehicles_)
    if (!v.idle() || !v.schedule.empty() || v.link) return false;
  for (const auto& pv : private_)
    if (pv.active) return false;
  return true;
}

ScenarioInputs load_inputs(const ScenarioConfig& cfg) {
  ScenarioInputs in;
  if (cfg.network.empty()) {
    in.net = make_grid({cfg.grid_rows, cfg.grid_cols, cfg.grid_cell_m, cfg.grid_speed_mps,
                        cfg.grid_jam_vpm});
  } else {
    in.net = load_network(cfg.network);
  }
  in.od = cfg.demand.empty() ? uniform_od(in.net, cfg.demand_total, cfg.load_period_s)
                             : load_od(cfg.demand);
  return in;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  return run_scenario(cfg, load_inputs(cfg));
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, const ScenarioInputs& inputs) {
  cfg.validate();
  auto demand = generate_demand(inputs.net, inputs.od, cfg.load_period_s, cfg.share, cfg.seed);
  auto fleet = seed_fleet(inputs.net, demand, cfg.fleet_size, cfg.seed, cfg.capacity);
  Simulation sim(inputs.net, cfg, std::move(demand), std::move(fleet));

  ScenarioResult out;
  out.config = cfg;
  while (!sim.finished()) {
    if (sim.now() >= cfg.max_sim_s) break;
    auto events = sim.step();
    out.events.insert(out.events.end(), std::make_move_iterator(events.begin()),
                      std::make_move_iterator(events.end()));
  }
  out.epochs = sim.epochs();
  out.counters = sim.counters();
  out.counters.truncated = !sim.finished();
  out.riders = sim.riders();
  out.indicators = compute_indicators(out.events, {cfg.fleet_size});

  double max_sum = 0.0, mean_sum = 0.0;
  std::size_t active = 0;
  for (const auto& e : out.epochs) {
    if (e.pending == 0) continue;
    max_sum += e.compute_max_s;
    mean_sum += e.compute_mean_s;
    ++active;
  }
  if (active > 0) {
    out.indicators.compute_max_s = max_sum / static_cast<double>(active);
    out.indicators.compute_mean_s = mean_sum / static_cast<double>(active);
  }
  return out;
}

}  // namespace ridepool
