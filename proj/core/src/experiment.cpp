#include "fog2c/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <nlohmann/json.hpp>

#include "fog2c/errors.hpp"
#include "fog2c/rng.hpp"
#include "fog2c/svg.hpp"

namespace fog2c {
namespace fs = std::filesystem;

namespace {

using ojson = nlohmann::ordered_json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  f << body;
  f.close();
  if (!f) throw Error("failed writing '" + path.string() + "'");
}

std::vector<StrategySummary> summarize(const std::vector<StrategyStats>& stats) {
  std::vector<StrategySummary> out;
  for (const auto& s : stats) out.push_back({s.strategy, s.success_rate, s.median});
  return out;
}

std::vector<Savings> savings_against(const std::vector<StrategySummary>& rows,
                                     std::optional<double> size) {
  std::vector<Savings> out;
  const StrategySummary* full = nullptr;
  for (const auto& r : rows) {
    if (r.strategy == Strategy::full_opt) full = &r;
  }
  if (!full) return out;
  for (const auto& r : rows) {
    if (r.strategy == Strategy::full_opt) continue;
    out.push_back({r.strategy, size, savings_percent(full->median, r.median)});
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Plots never fail a run.
void try_plot(const fs::path& path, const svg::Chart& chart, std::vector<fs::path>& artifacts) {
  try {
    write_file(path, svg::render(chart));
    artifacts.push_back(path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "warning: plot '%s' skipped: %s\n", path.string().c_str(), e.what());
  }
}

void expect_scenario(const ScenarioConfig& c, ScenarioKind k, Command cmd) {
  if (c.experiment.scenario != k) {
    throw ConfigError("command " + std::string(to_string(cmd)) +
                      " needs experiment.scenario \"" + std::string(to_string(k)) +
                      "\" (config has \"" + std::string(to_string(c.experiment.scenario)) + "\")");
  }
}

void run_a(const ScenarioConfig& c, std::uint64_t seed, const fs::path& dir, bool plot,
           unsigned threads, RunReport& report) {
  const auto& x = c.experiment;
  const auto requests = sample_requests(*c.workload.distribution, c.workload.request_count,
                                        derive_seed(seed, "workload"));
  const auto stats = run_scenario(requests, c.topology, x.strategies, x.scope, seed, threads);

  write_file(dir / "scenario_a_requests.csv", scenario_a_requests_csv(stats));
  write_file(dir / "scenario_a_summary.csv", scenario_a_summary_csv(stats));
  write_file(dir / "scenario_a_cdf.csv", scenario_a_cdf_csv(stats));
  report.artifacts.push_back(dir / "scenario_a_requests.csv");
  report.artifacts.push_back(dir / "scenario_a_summary.csv");
  report.artifacts.push_back(dir / "scenario_a_cdf.csv");
  report.summary = summarize(stats);
  report.savings = savings_against(report.summary, std::nullopt);

  if (plot) {
    svg::Chart chart{"Energy CDF per request", "energy [J]", "cumulative fraction", true, false, {}};
    for (const auto& s : stats) {
      svg::Series series{std::string(to_string(s.strategy)), {}, true};
      for (const auto& p : s.cdf) series.points.emplace_back(p.energy, p.fraction);
      chart.series.push_back(std::move(series));
    }
    try_plot(dir / "scenario_a_cdf.svg", chart, report.artifacts);
  }
}

void run_b(const ScenarioConfig& c, std::uint64_t seed, const fs::path& dir, bool plot,
           unsigned threads, RunReport& report) {
  const auto& x = c.experiment;
  for (std::size_t i = 0; i < x.size_grid.size(); ++i) {
    RequestDistribution dist = *c.workload.distribution;
    dist.size = Distribution::constant(x.size_grid[i]);
    const std::uint64_t point_seed = derive_seed(seed, "size", i);
    const auto requests =
        sample_requests(dist, c.workload.request_count, derive_seed(point_seed, "workload"));
    const auto stats =
        run_scenario(requests, c.topology, x.strategies, x.scope, point_seed, threads);
    SizePoint p{x.size_grid[i], summarize(stats)};
    for (auto& s : savings_against(p.strategies, p.size)) report.savings.push_back(s);
    report.sizes.push_back(std::move(p));
  }
  write_file(dir / "scenario_b_medians.csv", scenario_b_csv(report.sizes));
  report.artifacts.push_back(dir / "scenario_b_medians.csv");

  if (plot) {
    svg::Chart chart{"Median energy versus request size", "request size [b]", "median energy [J]",
                     false, true, {}};
    for (std::size_t k = 0; k < x.strategies.size(); ++k) {
      svg::Series series{std::string(to_string(x.strategies[k])), {}, false};
      for (const auto& p : report.sizes) {
        // The curve ends where the median becomes undefined.
        if (!p.strategies[k].median) break;
        series.points.emplace_back(p.size, *p.strategies[k].median);
      }
      chart.series.push_back(std::move(series));
    }
    try_plot(dir / "scenario_b_medians.svg", chart, report.artifacts);
  }
}

void run_c(const ScenarioConfig& c, const fs::path& dir, bool plot, unsigned threads,
           RunReport& report) {
  const auto& x = c.experiment;
  const AoiScenario scenario = build_aoi_scenario(c);
  report.sweep = sweep_rate(scenario, x.rate_grid, threads);
  if (x.aoi_max) {
    report.optimal_rate = optimal_rate_for_aoi(scenario, *x.aoi_max, x.rate_grid, threads);
  }
  write_file(dir / "scenario_c_sweep.csv", scenario_c_csv(report.sweep));
  report.artifacts.push_back(dir / "scenario_c_sweep.csv");

  if (plot) {
    svg::Chart aoi{"Mean AoI versus generation rate", "rate [1/s]", "mean AoI [s]", false, false, {}};
    svg::Chart power{"Mean power versus generation rate", "rate [1/s]", "mean power [W]", false,
                     false, {}};
    svg::Series sa{"mean_aoi", {}, false}, sp{"mean_power", {}, false};
    for (const auto& [rate, r] : report.sweep) {
      sa.points.emplace_back(rate, r.mean_aoi);
      sp.points.emplace_back(rate, r.mean_power);
    }
    aoi.series.push_back(std::move(sa));
    power.series.push_back(std::move(sp));
    try_plot(dir / "scenario_c_aoi.svg", aoi, report.artifacts);
    try_plot(dir / "scenario_c_power.svg", power, report.artifacts);
  }
}

ojson summary_json(const std::vector<StrategySummary>& rows) {
  ojson arr = ojson::array();
  for (const auto& r : rows) {
    ojson j;
    j["strategy"] = std::string(to_string(r.strategy));
    j["success_rate"] = r.success_rate;
    j["median_J"] = r.median ? ojson(*r.median) : ojson(nullptr);
    arr.push_back(j);
  }
  return arr;
}

std::string report_json(const RunReport& r) {
  ojson j;
  j["command"] = std::string(to_string(r.command));
  j["config_digest"] = r.digest;
  j["seed"] = r.seed;
  j["timestamp"] = r.timestamp;
  j["wall_clock_s"] = r.wall_clock;
  ojson files = ojson::array();
  for (const auto& p : r.artifacts) files.push_back(p.filename().string());
  j["artifacts"] = files;
  if (!r.summary.empty()) j["strategies"] = summary_json(r.summary);
  if (!r.sizes.empty()) {
    ojson arr = ojson::array();
    for (const auto& p : r.sizes) {
      ojson e;
      e["size_bits"] = p.size;
      e["strategies"] = summary_json(p.strategies);
      arr.push_back(e);
    }
    j["sizes"] = arr;
  }
  if (!r.sweep.empty()) {
    ojson arr = ojson::array();
    for (const auto& [rate, a] : r.sweep) {
      ojson e;
      e["rate_per_s"] = rate;
      e["mean_aoi_s"] = a.mean_aoi;
      e["mean_power_W"] = a.mean_power;
      e["cpu_frequency_Hz"] = a.frequency;
      e["diverged"] = a.diverged;
      arr.push_back(e);
    }
    j["sweep"] = arr;
    if (r.optimal_rate) j["optimal_rate_per_s"] = *r.optimal_rate;
  }
  if (!r.savings.empty()) {
    ojson arr = ojson::array();
    for (const auto& s : r.savings) {
      ojson e;
      e["strategy"] = "full_opt";
      e["baseline"] = std::string(to_string(s.baseline));
      if (s.size) e["size_bits"] = *s.size;
      e["median_savings_percent"] = s.percent ? ojson(*s.percent) : ojson(nullptr);
      arr.push_back(e);
    }
    j["savings"] = arr;
  }
  return j.dump(2) + "\n";
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::scenario_a: return "scenario-a";
    case Command::scenario_b: return "scenario-b";
    case Command::scenario_c: return "scenario-c";
  }
  return "scenario-a";
}

std::optional<Command> parse_command(std::string_view s) noexcept {
  if (s == "scenario-a") return Command::scenario_a;
  if (s == "scenario-b") return Command::scenario_b;
  if (s == "scenario-c") return Command::scenario_c;
  return std::nullopt;
}

std::string scenario_a_requests_csv(const std::vector<StrategyStats>& stats) {
  std::string out = "strategy,request_id,feasible,energy_J,latency_s\n";
  for (const auto& s : stats) {
    const std::string name(to_string(s.strategy));
    for (const auto& a : s.allocations) {
      out += name + "," + std::to_string(a.request_id) + "," + (a.feasible ? "1" : "0") + "," +
             opt_num(a.energy) + "," + opt_num(a.latency) + "\n";
    }
  }
  return out;
}

std::string scenario_a_summary_csv(const std::vector<StrategyStats>& stats) {
  std::string out = "strategy,success_rate,median_J\n";
  for (const auto& s : stats) {
    out += std::string(to_string(s.strategy)) + "," + num(s.success_rate) + "," +
           opt_num(s.median) + "\n";
  }
  return out;
}

std::string scenario_a_cdf_csv(const std::vector<StrategyStats>& stats) {
  std::string out = "strategy,energy_J,cumulative_fraction\n";
  for (const auto& s : stats) {
    const std::string name(to_string(s.strategy));
    for (const auto& p : s.cdf) out += name + "," + num(p.energy) + "," + num(p.fraction) + "\n";
  }
  return out;
}

std::string scenario_b_csv(const std::vector<SizePoint>& points) {
  std::string out = "size_bits,strategy,median_J,success_rate\n";
  for (const auto& p : points) {
    for (const auto& s : p.strategies) {
      out += num(p.size) + "," + std::string(to_string(s.strategy)) + "," + opt_num(s.median) +
             "," + num(s.success_rate) + "\n";
    }
  }
  return out;
}

std::string scenario_c_csv(const std::vector<std::pair<double, AoiResult>>& sweep) {
  std::string out = "rate_per_s,mean_aoi_s,mean_power_W,tx_util,cpu_util,diverged\n";
  for (const auto& [rate, r] : sweep) {
    out += num(rate) + "," + num(r.mean_aoi) + "," + num(r.mean_power) + "," +
           num(r.tx_utilization) + "," + num(r.cpu_utilization) + "," +
           (r.diverged ? "1" : "0") + "\n";
  }
  return out;
}

RunReport run(const ScenarioConfig& config, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.command = options.command;
  report.digest = config_digest(config);
  report.seed = options.seed.value_or(config.experiment.seed);
  report.timestamp = utc_timestamp();

  const fs::path dir = options.out_dir.value_or(fs::path(config.output.directory));
  const bool plot = options.plot.value_or(config.output.plot);
  const unsigned threads = options.threads == 0 ? 1 : options.threads;

  switch (options.command) {
    case Command::scenario_a: expect_scenario(config, ScenarioKind::a, options.command); break;
    case Command::scenario_b: expect_scenario(config, ScenarioKind::b, options.command); break;
    case Command::scenario_c: expect_scenario(config, ScenarioKind::c, options.command); break;
  }

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error("cannot create output directory '" + dir.string() + "'" +
                (ec ? ": " + ec.message() : std::string()));
  }

  switch (options.command) {
    case Command::scenario_a: run_a(config, report.seed, dir, plot, threads, report); break;
    case Command::scenario_b: run_b(config, report.seed, dir, plot, threads, report); break;
    case Command::scenario_c: run_c(config, dir, plot, threads, report); break;
  }

  report.wall_clock =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.artifacts.push_back(dir / "report.json");
  write_file(dir / "report.json", report_json(report));
  return report;
}

}  // namespace fog2c
