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

#include "ridepool/events.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"

#include "ridepool/error.hpp"

namespace ridepool {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::array<const char*, 9> kKindNames{
    "request", "assignment", "pickup", "dropoff", "expiry",
    "link_enter", "link_exit", "violation", "message"};

template <typename T>
void put(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
std::optional<T> get(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->template get<T>();
}

}  // namespace

const char* to_string(EventKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

std::optional<EventKind> event_kind_from(const std::string& s) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (s == kKindNames[i]) return static_cast<EventKind>(i);
  return std::nullopt;
}

std::string to_json_line(const SimEvent& e) {
  Json j;
  j["t"] = e.t;
  j["kind"] = to_string(e.kind);
  put(j, "vehicle", e.vehicle);
  put(j, "user", e.user);
  put(j, "node", e.node);
  put(j, "link", e.link);
  if (e.private_vehicle) j["private"] = true;
  put(j, "direct_s", e.direct_s);
  put(j, "dist_m", e.dist_m);
  put(j, "dur_s", e.dur_s);
  if (!e.detail.empty()) j["detail"] = e.detail;
  put(j, "epoch", e.epoch);
  if (!e.sender.empty()) j["sender"] = e.sender;
  if (!e.receiver.empty()) j["receiver"] = e.receiver;
  put(j, "count", e.count);
  put(j, "accepted", e.accepted);
  return j.dump();
}

SimEvent parse_event_line(const std::string& line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::parse_error& err) {
    throw ParseError(std::string("malformed event: ") + err.what());
  }
  if (!j.is_object()) throw ParseError("event must be a JSON object");
  SimEvent e;
  try {
    e.t = j.at("t").get<double>();
    const auto kind = event_kind_from(j.at("kind").get<std::string>());
    if (!kind) throw ParseError("unknown event kind");
    e.kind = *kind;
    e.vehicle = get<std::int64_t>(j, "vehicle");
    e.user = get<std::int64_t>(j, "user");
    e.node = get<std::int64_t>(j, "node");
    e.link = get<std::int64_t>(j, "link");
    e.private_vehicle = get<bool>(j, "private").value_or(false);
    e.direct_s = get<double>(j, "direct_s");
    e.dist_m = get<double>(j, "dist_m");
    e.dur_s = get<double>(j, "dur_s");
    e.detail = get<std::string>(j, "detail").value_or("");
    e.epoch = get<int>(j, "epoch");
    e.sender = get<std::string>(j, "sender").value_or("");
    e.receiver = get<std::string>(j, "receiver").value_or("");
    e.count = get<std::int64_t>(j, "count");
    e.accepted = get<bool>(j, "accepted");
  } catch (const Json::exception& err) {
    throw ParseError(std::string("bad event field: ") + err.what());
  }
  return e;
}

void write_events(std::ostream& out, std::span<const SimEvent> events) {
  for (const auto& e : events) out << to_json_line(e) << '\n';
}

std::vector<SimEvent> read_events(std::istream& in) {
  std::vector<SimEvent> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_event_line(line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), number);
    }
  }
  return out;
}

std::vector<SimEvent> load_events(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open event log " + path.string());
  return read_events(in);
}

}  // namespace ridepool
