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

enum class EventKind : std::uint8_t {
  Request,
  Assignment,
  Pickup,
  Dropoff,
  Expiry,
  LinkEnter,
  LinkExit,
  Violation,
  Message
};

const char* to_string(EventKind k);
std::optional<EventKind> event_kind_from(const std::string& s);

/// One line of the event log. Ids are external (NodeId, LinkId).
struct SimEvent {
  double t = 0.0;
  EventKind kind = EventKind::Request;
  std::optional<std::int64_t> vehicle;
  std::optional<std::int64_t> user;
  std::optional<std::int64_t> node;
  std::optional<std::int64_t> link;
  bool private_vehicle = false;  // background traffic
  std::optional<double> direct_s;  // request: frozen direct travel time
  std::optional<double> dist_m;    // link_exit
  std::optional<double> dur_s;     // link_exit
  std::string detail;  // assignment kind, violation kind or message type
  // Message only.
  std::optional<int> epoch;
  std::string sender;
  std::string receiver;
  std::optional<std::int64_t> count;
  std::optional<bool> accepted;

  friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

std::string to_json_line(const SimEvent& e);
SimEvent parse_event_line(const std::string& line);

void write_events(std::ostream& out, std::span<const SimEvent> events);
std::vector<SimEvent> read_events(std::istream& in);
std::vector<SimEvent> load_events(const std::filesystem::path& path);

}  // namespace ridepool
