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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "ridepool/error.hpp"

namespace ridepool {

namespace {

constexpr int kIndicatorColumns = 9;  // SR .. compute_mean_s
constexpr int kFirstIndicator = 7;    // column index of SR in summary.csv
const char* const kIndicatorNames[kIndicatorColumns] = {
    "SR", "VKT_km", "DT_min", "WT_min", "TTT_min", "TS_kmh", "NoA", "compute_max_s",
    "compute_mean_s"};

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string num(const std::optional<double>& v, int digits = 6) {
  return v ? num(*v, digits) : std::string("NA");
}

std::string level_text(const ScenarioConfig& c) {
  return c.dispatch.mode == DispatchMode::Centralized ? "NA"
                                                      : std::to_string(c.dispatch.search_level);
}

std::string cell_prefix(const ScenarioConfig& c) {
  std::ostringstream os;
  os << c.scenario << ',' << to_string(c.dispatch.mode) << ',' << level_text(c) << ','
     << c.fleet_size << ',' << num(c.share, 4) << ',' << num(c.flexibility_s, 1) << ','
     << c.seed;
  return os.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void make_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create output directory " + dir.string());
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += ch;
    }
  }
  return out;
}

// Mean with one-sigma bars per group against a categorical axis.
std::string svg_plot(const Aggregate& agg, std::size_t column) {
  constexpr double W = 560, H = 360, L = 70, R = 20, T = 40, B = 60;
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& row : agg.rows) {
    if (!row.mean[column]) continue;
    const double m = *row.mean[column];
    const double s = row.stddev[column].value_or(0.0);
    lo = std::min(lo, m - s);
    hi = std::max(hi, m + s);
  }
  if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
  if (hi - lo < 1e-9) lo -= 1.0, hi += 1.0;
  const double pad = 0.08 * (hi - lo);
  lo -= pad;
  hi += pad;
  const std::size_t n = agg.rows.size();
  auto x_at = [&](std::size_t i) {
    return L + (W - L - R) * (n == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(n - 1));
  };
  auto y_at = [&](double v) { return T + (H - T - B) * (hi - v) / (hi - lo); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << xml_escape(agg.columns[column]) << " vs " << xml_escape(agg.axis) << "</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = lo + (hi - lo) * k / 4.0;
    const double y = y_at(v);
    os << "<line x1=\"" << L - 4 << "\" y1=\"" << y << "\" x2=\"" << L << "\" y2=\"" << y
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << num(v, 2)
       << "</text>\n";
  }
  std::string line;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = agg.rows[i];
    const double x = x_at(i);
    os << "<text x=\"" << x << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">"
       << xml_escape(row.label) << "</text>\n";
    if (!row.mean[column]) continue;
    const double m = *row.mean[column];
    const double s = row.stddev[column].value_or(0.0);
    os << "<line x1=\"" << x << "\" y1=\"" << y_at(m - s) << "\" x2=\"" << x << "\" y2=\""
       << y_at(m + s) << "\" stroke=\"gray\"/>\n";
    os << "<circle cx=\"" << x << "\" cy=\"" << y_at(m) << "\" r=\"4\" fill=\"steelblue\"/>\n";
    line += (line.empty() ? "" : " ") + num(x, 2) + "," + num(y_at(m), 2);
  }
  if (!line.empty())
    os << "<polyline points=\"" << line << "\" fill=\"none\" stroke=\"steelblue\"/>\n";
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
     << xml_escape(agg.axis) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

void write_aggregate(const Aggregate& agg, const std::filesystem::path& dir) {
  std::ostringstream os;
  os << "group,runs";
  for (const auto& c : agg.columns) os << ',' << c << "_mean," << c << "_std";
  os << '\n';
  for (const auto& row : agg.rows) {
    os << row.label << ',' << row.runs;
    for (std::size_t c = 0; c < agg.columns.size(); ++c)
      os << ',' << num(row.mean[c], 9) << ',' << num(row.stddev[c], 9);
    os << '\n';
  }
  write_file(dir / "aggregate.csv", os.str());
  for (std::size_t c = 0; c < agg.columns.size(); ++c)
    write_file(dir / ("plot_" + agg.columns[c] + ".svg"), svg_plot(agg, c));
}

}  // namespace

std::optional<SweepAxis> sweep_axis_from(const std::string& name) {
  if (name == "search_level") return SweepAxis::SearchLevel;
  if (name == "fleet_size") return SweepAxis::FleetSize;
  if (name == "share") return SweepAxis::Share;
  if (name == "flexibility" || name == "flexibility_s") return SweepAxis::Flexibility;
  return std::nullopt;
}

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::SearchLevel:
      return "search_level";
    case SweepAxis::FleetSize:
      return "fleet_size";
    case SweepAxis::Share:
      return "share";
    case SweepAxis::Flexibility:
      return "flexibility_s";
  }
  return "?";
}

void apply_axis(ScenarioConfig& cfg, SweepAxis axis, const std::string& value) {
  switch (axis) {
    case SweepAxis::SearchLevel:
      apply_setting(cfg, "search_level", value);
      cfg.dispatch.mode =
          value == "centralized" ? DispatchMode::Centralized : DispatchMode::Distributed;
      break;
    case SweepAxis::FleetSize:
      apply_setting(cfg, "fleet_size", value);
      break;
    case SweepAxis::Share:
      apply_setting(cfg, "share", value);
      break;
    case SweepAxis::Flexibility:
      apply_setting(cfg, "flexibility_s", value);
      break;
  }
}

SweepResult run_sweep(const ScenarioConfig& base, SweepAxis axis,
                      std::span<const std::string> values, int seeds, int jobs) {
  if (values.empty()) throw ValidationError("sweep needs at least one value");
  if (seeds < 1) throw ValidationError("sweep needs at least one seed");
  if (jobs < 1) throw ValidationError("jobs must be >= 1");

  SweepResult out;
  out.axis = axis;
  out.values.assign(values.begin(), values.end());
  out.seeds = seeds;
  for (std::size_t v = 0; v < values.size(); ++v) {
    for (int s = 0; s < seeds; ++s) {
      SweepCell cell;
      cell.value_index = v;
      cell.seed_index = s;
      cell.config = base;
      apply_axis(cell.config, axis, values[v]);
      cell.config.seed = base.seed + static_cast<std::uint64_t>(s);
      try {
        cell.config.validate();
      } catch (const std::exception& e) {
        throw ValidationError(std::string("sweep cell invalid: ") + e.what() + "\n" +
                              to_text(cell.config));
      }
      out.cells.push_back(std::move(cell));
    }
  }

  const ScenarioInputs inputs = load_inputs(base);
  std::vector<std::exception_ptr> errors(out.cells.size());
  auto run_cell = [&](std::size_t i) {
    try {
      auto r = run_scenario(out.cells[i].config, inputs);
      out.cells[i].indicators = r.indicators;
      out.cells[i].counters = r.counters;
      out.cells[i].epochs = std::move(r.epochs);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const int threads = std::min<int>(jobs, static_cast<int>(out.cells.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < out.cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < out.cells.size(); i = next++) run_cell(i);
      });
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("sweep cell failed: ") + e.what() + "\n" +
                               to_text(out.cells[i].config));
    }
  }
  return out;
}

std::string summary_row(const ScenarioConfig& c, const IndicatorSet& ind) {
  std::ostringstream os;
  os << cell_prefix(c) << ',' << num(ind.sr_pct) << ',' << num(ind.vkt_km) << ','
     << num(ind.dt_min) << ',' << num(ind.wt_min) << ',' << num(ind.ttt_min) << ','
     << num(ind.ts_kmh) << ',' << num(ind.noa) << ',' << num(ind.compute_max_s, 9) << ','
     << num(ind.compute_mean_s, 9);
  return os.str();
}

std::string epochs_header() {
  return "scenario,mode,search_level,fleet_size,share,flexibility_s,seed,epoch,t_s,pending,"
         "expired,vehicles_available,candidates_central,candidates_max_agent,active_agents,"
         "proposals,accepted,rejected,riders_assigned,compute_max_s,compute_mean_s";
}

std::string epoch_row(const ScenarioConfig& c, const EpochRecord& e) {
  std::ostringstream os;
  os << cell_prefix(c) << ',' << e.epoch << ',' << num(e.t_s, 1) << ',' << e.pending << ','
     << e.expired << ',' << e.vehicles_available << ',' << e.candidates_central << ','
     << e.candidates_max_agent << ',' << e.active_agents << ',' << e.proposals << ','
     << e.accepted << ',' << e.rejected << ',' << e.riders_assigned << ','
     << num(e.compute_max_s, 9) << ',' << num(e.compute_mean_s, 9);
  return os.str();
}

void write_run_outputs(const ScenarioResult& result, const std::filesystem::path& dir) {
  make_dir(dir);
  write_file(dir / "summary.csv", std::string(kSummaryHeader) + "\n" +
                                      summary_row(result.config, result.indicators) + "\n");
  std::string epochs = epochs_header() + "\n";
  for (const auto& e : result.epochs) epochs += epoch_row(result.config, e) + "\n";
  write_file(dir / "epochs.csv", epochs);
  std::ofstream ev(dir / "events.jsonl", std::ios::binary);
  if (!ev) throw IoError("cannot write " + (dir / "events.jsonl").string());
  write_events(ev, result.events);
}

void emit_outputs(const SweepResult& result, const std::filesystem::path& dir) {
  if (result.cells.empty()) throw ValidationError("no sweep results to write");
  make_dir(dir);
  std::string summary = std::string(kSummaryHeader) + "\n";
  std::string epochs = epochs_header() + "\n";
  for (const auto& cell : result.cells) {
    summary += summary_row(cell.config, cell.indicators) + "\n";
    for (const auto& e : cell.epochs) epochs += epoch_row(cell.config, e) + "\n";
  }
  write_file(dir / "summary.csv", summary);
  write_file(dir / "epochs.csv", epochs);
  write_aggregate(aggregate_summary(summary), dir);
}

Aggregate aggregate_summary(const std::string& summary_csv) {
  std::istringstream in(summary_csv);
  std::string line;
  if (!std::getline(in, line) || line != kSummaryHeader)
    throw ParseError("summary.csv: unexpected header", 1);

  struct Group {
    std::vector<std::string> key;  // scenario, mode, level, fleet, share, flexibility
    std::vector<std::vector<double>> samples = std::vector<std::vector<double>>(kIndicatorColumns);
    std::size_t runs = 0;
  };
  std::vector<Group> groups;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != static_cast<std::size_t>(kFirstIndicator + kIndicatorColumns))
      throw ParseError("summary.csv: wrong field count", number);
    std::vector<std::string> key(f.begin(), f.begin() + 6);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return g.key == key; });
    if (it == groups.end()) {
      groups.push_back({key});
      it = groups.end() - 1;
    }
    ++it->runs;
    for (int c = 0; c < kIndicatorColumns; ++c) {
      const auto& v = f[kFirstIndicator + c];
      if (v == "NA") continue;
      try {
        it->samples[c].push_back(std::stod(v));
      } catch (const std::exception&) {
        throw ParseError("summary.csv: bad number '" + v + "'", number);
      }
    }
  }

  // Axis: first key column that differs between groups. Mode and level
  // together form the search-level axis.
  const char* const names[6] = {"scenario", "mode", "search_level", "fleet_size", "share",
                                "flexibility_s"};
  std::vector<std::size_t> varying;
  for (std::size_t k = 0; k < 6; ++k)
    for (const auto& g : groups)
      if (g.key[k] != groups.front().key[k]) {
        varying.push_back(k);
        break;
      }
  Aggregate agg;
  agg.columns.assign(kIndicatorNames, kIndicatorNames + kIndicatorColumns);
  if (varying.empty()) {
    agg.axis = "cell";
  } else {
    std::size_t first = varying.front();
    if (first == 1) first = 2;
    agg.axis = names[first];
  }
  for (const auto& g : groups) {
    AggregateRow row;
    std::string label;
    for (auto k : varying) {
      if (k == 1) continue;
      std::string part = g.key[k];
      if (k == 2 && g.key[1] == "centralized") part = "centralized";
      label += (label.empty() ? "" : "/") + part;
    }
    if (label.empty() && !varying.empty()) label = g.key[1];
    row.label = label.empty() ? g.key[0] : label;
    row.runs = g.runs;
    for (int c = 0; c < kIndicatorColumns; ++c) {
      const auto& s = g.samples[c];
      if (s.empty()) {
        row.mean.emplace_back();
        row.stddev.emplace_back();
        continue;
      }
      double mean = 0.0;
      for (double x : s) mean += x;
      mean /= static_cast<double>(s.size());
      double var = 0.0;
      for (double x : s) var += (x - mean) * (x - mean);
      row.mean.push_back(mean);
      row.stddev.push_back(s.size() > 1 ? std::sqrt(var / static_cast<double>(s.size() - 1))
                                        : 0.0);
    }
    agg.rows.push_back(std::move(row));
  }
  return agg;
}

std::string format_aggregate(const Aggregate& agg) {
  std::ostringstream os;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-14s %4s", agg.axis.c_str(), "runs");
  os << buf;
  for (int c = 0; c < 7; ++c) {
    std::snprintf(buf, sizeof buf, " %18s", agg.columns[c].c_str());
    os << buf;
  }
  os << '\n';
  for (const auto& row : agg.rows) {
    std::snprintf(buf, sizeof buf, "%-14s %4zu", row.label.c_str(), row.runs);
    os << buf;
    for (int c = 0; c < 7; ++c) {
      if (row.mean[c]) {
        std::snprintf(buf, sizeof buf, " %9.3f +- %6.3f", *row.mean[c], row.stddev[c].value_or(0));
      } else {
        std::snprintf(buf, sizeof buf, " %18s", "NA");
      }
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

std::string report(const std::filesystem::path& dir) {
  std::ifstream in(dir / "summary.csv", std::ios::binary);
  if (!in) throw IoError("cannot read " + (dir / "summary.csv").string());
  std::stringstream text;
  text << in.rdbuf();
  const Aggregate agg = aggregate_summary(text.str());
  write_aggregate(agg, dir);
  return format_aggregate(agg);
}

}  // namespace ridepool
