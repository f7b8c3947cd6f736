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

// Command-line front end. Talks to the library through the C API only.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ridepool/ridepool.h"

namespace {

struct Failure {
  rp_status status;
};

void check(rp_status s) {
  if (s != RP_OK) throw Failure{s};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  rp_string_free(s);
  return out;
}

std::string fmt_opt(int has, double v) {
  if (!has) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void print_indicators(const rp_indicators& i) {
  std::printf("SR       %8.3f %%  (%lld of %lld served, %lld expired)\n", i.sr_pct,
              static_cast<long long>(i.served), static_cast<long long>(i.requests),
              static_cast<long long>(i.expired));
  std::printf("VKT      %8.3f km\n", i.vkt_km);
  std::printf("DT       %8s min\n", fmt_opt(i.has_dt, i.dt_min).c_str());
  std::printf("WT       %8s min\n", fmt_opt(i.has_wt, i.wt_min).c_str());
  std::printf("TTT      %8.3f min\n", i.ttt_min);
  std::printf("TS       %8.3f km/h\n", i.ts_kmh);
  std::printf("NoA      %8.3f\n", i.noa);
  std::printf("compute  %8.6f s max, %8.6f s mean per matching time\n", i.compute_max_s,
              i.compute_mean_s);
}

// Loads a config and applies --set overrides and the output directory, with
// --out taking precedence over RIDEPOOL_OUT.
rp_config* prepare(const std::string& path, const std::vector<std::string>& sets,
                   const std::string& out) {
  rp_config* cfg = nullptr;
  check(rp_config_load(path.c_str(), &cfg));
  try {
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::cerr << "error: --set expects key=value, got '" << kv << "'\n";
        throw Failure{RP_ERR_INVALID_ARGUMENT};
      }
      check(rp_config_set(cfg, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
    }
    if (const char* env = std::getenv("RIDEPOOL_OUT"); env != nullptr && *env != '\0')
      check(rp_config_set(cfg, "out_dir", env));
    if (!out.empty()) check(rp_config_set(cfg, "out_dir", out.c_str()));
    check(rp_config_validate(cfg));
  } catch (...) {
    rp_config_free(cfg);
    throw;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ridepool: shared ride-hailing simulation with pair-then-assign matching"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen-net", "Generate a network file");
  std::string kind;
  int rows = 0, cols = 0;
  double cell_m = 0, speed = 0, jam = 0.125;
  std::string gen_out;
  gen->add_option("kind", kind, "Network family")->required()->check(CLI::IsMember({"grid"}));
  gen->add_option("rows", rows, "Rows")->required();
  gen->add_option("cols", cols, "Columns")->required();
  gen->add_option("cell_m", cell_m, "Block length in meters")->required();
  gen->add_option("speed", speed, "Free-flow speed in m/s")->required();
  gen->add_option("jam", jam, "Jam density in vehicles per meter");
  gen->add_option("-o,--output", gen_out, "Output file (default stdout)");

  auto* run = app.add_subcommand("run", "Run one scenario");
  std::string run_cfg, run_out;
  std::vector<std::string> run_sets;
  run->add_option("config", run_cfg, "Scenario config")->required()->check(CLI::ExistingFile);
  run->add_option("--set", run_sets, "Override a config key (key=value)");
  run->add_option("--out", run_out, "Output directory");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  std::string sweep_cfg, axis, values, sweep_out;
  int seeds = 1, jobs = 0;
  std::vector<std::string> sweep_sets;
  sweep->add_option("config", sweep_cfg, "Base scenario config")->required()->check(CLI::ExistingFile);
  sweep->add_option("--axis", axis, "search_level | fleet_size | share | flexibility")->required();
  sweep->add_option("--values", values, "Comma-separated axis values")->required();
  sweep->add_option("--seeds", seeds, "Seeds per value")->check(CLI::PositiveNumber);
  sweep->add_option("--jobs", jobs, "Parallel cells (default: config jobs)");
  sweep->add_option("--set", sweep_sets, "Override a config key (key=value)");
  sweep->add_option("--out", sweep_out, "Output directory");

  auto* rep = app.add_subcommand("report", "Aggregate an output directory");
  std::string rep_dir;
  rep->add_option("dir", rep_dir, "Directory holding summary.csv")->required();

  auto* ind = app.add_subcommand("indicators", "Recompute indicators from an event log");
  std::string log_path;
  int fleet = 0;
  ind->add_option("events", log_path, "events.jsonl")->required()->check(CLI::ExistingFile);
  ind->add_option("--fleet", fleet, "Shared fleet size")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      rp_network* net = nullptr;
      check(rp_network_grid(rows, cols, cell_m, speed, jam, &net));
      char* text = nullptr;
      const rp_status s = rp_network_to_text(net, &text);
      rp_network_free(net);
      check(s);
      const std::string body = take(text);
      if (gen_out.empty()) {
        std::cout << body;
      } else {
        std::ofstream f(gen_out);
        if (!(f << body)) {
          std::cerr << "error: cannot write " << gen_out << "\n";
          return 1;
        }
      }
    } else if (run->parsed()) {
      rp_config* cfg = prepare(run_cfg, run_sets, run_out);
      char* dir = nullptr;
      rp_result* result = nullptr;
      rp_status s = rp_config_get(cfg, "out_dir", &dir);
      if (s == RP_OK) s = rp_run(cfg, &result);
      rp_config_free(cfg);
      const std::string out_dir = take(dir);
      check(s);
      rp_indicators indicators{};
      s = rp_result_indicators(result, &indicators);
      if (s == RP_OK) s = rp_result_write(result, out_dir.c_str());
      rp_result_free(result);
      check(s);
      print_indicators(indicators);
      std::printf("outputs in %s\n", out_dir.c_str());
    } else if (sweep->parsed()) {
      rp_config* cfg = prepare(sweep_cfg, sweep_sets, sweep_out);
      char* dir = nullptr;
      rp_status s = rp_config_get(cfg, "out_dir", &dir);
      const std::string out_dir = take(dir);
      if (jobs <= 0 && s == RP_OK) {
        char* text = nullptr;
        s = rp_config_get(cfg, "jobs", &text);
        jobs = std::atoi(take(text).c_str());
      }
      rp_sweep* result = nullptr;
      if (s == RP_OK) s = rp_sweep_run(cfg, axis.c_str(), values.c_str(), seeds, jobs, &result);
      rp_config_free(cfg);
      check(s);
      s = rp_sweep_write(result, out_dir.c_str());
      rp_sweep_free(result);
      check(s);
      char* table = nullptr;
      check(rp_report(out_dir.c_str(), &table));
      std::cout << take(table);
      std::printf("outputs in %s\n", out_dir.c_str());
    } else if (rep->parsed()) {
      char* table = nullptr;
      check(rp_report(rep_dir.c_str(), &table));
      std::cout << take(table);
    } else if (ind->parsed()) {
      rp_indicators indicators{};
      check(rp_indicators_from_log(log_path.c_str(), fleet, &indicators));
      print_indicators(indicators);
    }
  } catch (const Failure& f) {
    const char* msg = rp_last_error();
    if (msg != nullptr && *msg != '\0') std::cerr << "error: " << msg << "\n";
    return f.status == RP_ERR_IO ? 3 : 2;
  }
  return 0;
}
