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

#include "ridepool/config.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "ridepool/error.hpp"

namespace ridepool {
namespace {

TEST(ConfigTest, DefaultsAreValid) {
  const ScenarioConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.capacity, 2);
  EXPECT_DOUBLE_EQ(c.delta_s, 60.0);
  EXPECT_DOUBLE_EQ(c.flexibility_s, 300.0);
  EXPECT_EQ(c.dispatch.search_level, 3);
  EXPECT_FALSE(c.dispatch.min_vtts_s.has_value());
}

TEST(ConfigTest, TextRoundTrip) {
  auto c = parse_config(
      "scenario = burst  # comment\n"
      "fleet_size = 44\nshare = 0.35\nmode = distributed\nsearch_level = 1\n"
      "min_vtts_s = -30\ntiming = off\nalpha = 0.25\nbeta = 0.75\nflexibility = 600\n"
      "background_traffic = off\nseed = 12345678901\n");
  EXPECT_EQ(c.scenario, "burst");
  EXPECT_EQ(c.fleet_size, 44);
  EXPECT_EQ(c.dispatch.mode, DispatchMode::Distributed);
  EXPECT_EQ(c.dispatch.search_level, 1);
  EXPECT_EQ(c.dispatch.min_vtts_s, -30.0);
  EXPECT_FALSE(c.timing);
  EXPECT_DOUBLE_EQ(c.flexibility_s, 600.0);
  EXPECT_EQ(c.seed, 12345678901u);
  const std::string text = to_text(c);
  EXPECT_EQ(to_text(parse_config(text)), text);
}

TEST(ConfigTest, SearchLevelCentralizedSelectsMode) {
  ScenarioConfig c;
  apply_setting(c, "mode", "distributed");
  apply_setting(c, "search_level", "centralized");
  EXPECT_EQ(c.dispatch.mode, DispatchMode::Centralized);
  apply_setting(c, "search_level", "2");
  EXPECT_EQ(c.dispatch.mode, DispatchMode::Centralized);
  EXPECT_EQ(c.dispatch.search_level, 2);
}

TEST(ConfigTest, UnknownKeyAndBadValuesReportLine) {
  try {
    parse_config("fleet_size = 3\nfleet = 4\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(std::string(e.what()).find("fleet"), std::string::npos);
  }
  EXPECT_THROW(parse_config("fleet_size = many\n"), ParseError);
  EXPECT_THROW(parse_config("just words\n"), ParseError);
  EXPECT_THROW(parse_config("timing = sometimes\n"), ParseError);
  ScenarioConfig c;
  EXPECT_THROW(apply_setting(c, "nonsense", "1"), ValidationError);
}

TEST(ConfigTest, ValidationRejectsBrokenInvariants) {
  auto bad = [](const char* key, const char* value) {
    ScenarioConfig c;
    apply_setting(c, key, value);
    EXPECT_THROW(c.validate(), ValidationError) << key << "=" << value;
  };
  bad("capacity", "3");
  bad("share", "1.2");
  bad("delta_s", "61.5");
  bad("tick_s", "0");
  bad("search_level", "4");
  bad("alpha", "0.9");
  bad("fleet_size", "-1");
  bad("load_period_s", "0");
  bad("jobs", "0");
}

TEST(ConfigTest, LoadResolvesRelativePaths) {
  const auto dir = std::filesystem::temp_directory_path() / "ridepool_config_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "a.cfg");
    f << "network = net.txt\ndemand = /abs/od.txt\n";
  }
  const auto c = load_config(dir / "a.cfg");
  EXPECT_EQ(c.network, dir / "net.txt");
  EXPECT_EQ(c.demand, std::filesystem::path("/abs/od.txt"));
  EXPECT_THROW(load_config(dir / "missing.cfg"), IoError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace ridepool
