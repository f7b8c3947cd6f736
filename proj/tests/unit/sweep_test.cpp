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

#include "ridepool/sweep.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "ridepool/error.hpp"

namespace ridepool {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

class SweepTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("ridepool_sweep_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  fs::path dir;
};

TEST_F(SweepTest, AxisNames) {
  EXPECT_EQ(sweep_axis_from("search_level"), SweepAxis::SearchLevel);
  EXPECT_EQ(sweep_axis_from("flexibility"), SweepAxis::Flexibility);
  EXPECT_EQ(sweep_axis_from("flexibility_s"), SweepAxis::Flexibility);
  EXPECT_FALSE(sweep_axis_from("tick_s").has_value());
  ScenarioConfig c;
  apply_axis(c, SweepAxis::SearchLevel, "2");
  EXPECT_EQ(c.dispatch.mode, DispatchMode::Distributed);
  EXPECT_EQ(c.dispatch.search_level, 2);
  apply_axis(c, SweepAxis::SearchLevel, "centralized");
  EXPECT_EQ(c.dispatch.mode, DispatchMode::Centralized);
  apply_axis(c, SweepAxis::FleetSize, "17");
  EXPECT_EQ(c.fleet_size, 17);
  EXPECT_THROW(apply_axis(c, SweepAxis::Share, "lots"), ValidationError);
}

TEST_F(SweepTest, SearchLevelSweepGivesOneRowPerValue) {
  auto base = testing::small_scenario();
  const std::vector<std::string> values{"0", "1", "2", "3", "centralized"};
  const auto r = run_sweep(base, SweepAxis::SearchLevel, values, 1, 2);
  ASSERT_EQ(r.cells.size(), 5u);
  emit_outputs(r, dir);
  const auto summary = lines(slurp(dir / "summary.csv"));
  ASSERT_EQ(summary.size(), 6u);
  EXPECT_EQ(summary[0], kSummaryHeader);
  EXPECT_EQ(summary[1].rfind("test,distributed,0,", 0), 0u);
  EXPECT_EQ(summary[5].rfind("test,centralized,NA,", 0), 0u);
  for (const auto* f : {"epochs.csv", "aggregate.csv", "plot_SR.svg"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;

  const auto agg = aggregate_summary(slurp(dir / "summary.csv"));
  EXPECT_EQ(agg.axis, "search_level");
  ASSERT_EQ(agg.rows.size(), 5u);
  EXPECT_EQ(agg.rows[4].label, "centralized");
  EXPECT_EQ(agg.rows[0].runs, 1u);
  EXPECT_FALSE(report(dir).empty());
}

TEST_F(SweepTest, SeedsAverageIntoOneGroup) {
  auto base = testing::small_scenario();
  const std::vector<std::string> values{"8", "12"};
  const auto r = run_sweep(base, SweepAxis::FleetSize, values, 3, 1);
  ASSERT_EQ(r.cells.size(), 6u);
  EXPECT_EQ(r.cells[1].config.seed, base.seed + 1);
  EXPECT_EQ(r.cells[3].config.fleet_size, 12);
  emit_outputs(r, dir);
  const auto agg = aggregate_summary(slurp(dir / "summary.csv"));
  EXPECT_EQ(agg.axis, "fleet_size");
  ASSERT_EQ(agg.rows.size(), 2u);
  EXPECT_EQ(agg.rows[0].runs, 3u);
  double mean = 0.0;
  for (int s = 0; s < 3; ++s) mean += r.cells[s].indicators.sr_pct;
  EXPECT_NEAR(*agg.rows[0].mean[0], mean / 3.0, 1e-5);
}

TEST_F(SweepTest, ParallelCellsGiveIdenticalBytes) {
  auto base = testing::small_scenario();
  const std::vector<std::string> values{"0.2", "0.4"};
  emit_outputs(run_sweep(base, SweepAxis::Share, values, 2, 1), dir / "serial");
  emit_outputs(run_sweep(base, SweepAxis::Share, values, 2, 4), dir / "parallel");
  for (const auto* f : {"summary.csv", "epochs.csv", "aggregate.csv"})
    EXPECT_EQ(slurp(dir / "serial" / f), slurp(dir / "parallel" / f)) << f;
}

TEST_F(SweepTest, SingleRunOutputs) {
  const auto r = run_scenario(testing::small_scenario());
  write_run_outputs(r, dir);
  const auto summary = lines(slurp(dir / "summary.csv"));
  ASSERT_EQ(summary.size(), 2u);
  EXPECT_EQ(summary[1], summary_row(r.config, r.indicators));
  EXPECT_EQ(lines(slurp(dir / "events.jsonl")).size(), r.events.size());
  EXPECT_EQ(lines(slurp(dir / "epochs.csv")).size(), r.epochs.size() + 1);
}

TEST_F(SweepTest, ReportRejectsBadSummary) {
  EXPECT_THROW(aggregate_summary("a,b\n"), ParseError);
  EXPECT_THROW(aggregate_summary(std::string(kSummaryHeader) + "\nx,y\n"), ParseError);
  EXPECT_THROW(report(dir / "missing"), IoError);
}

}  // namespace
}  // namespace ridepool
