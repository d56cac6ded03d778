#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fog2c/allocator.hpp"
#include "fog2c/aoi.hpp"
#include "fog2c/config.hpp"

namespace fog2c {

enum class Command { scenario_a, scenario_b, scenario_c };

std::string_view to_string(Command c) noexcept;
std::optional<Command> parse_command(std::string_view s) noexcept;

struct RunOptions {
  Command command = Command::scenario_a;
  std::optional<std::uint64_t> seed;  // overrides experiment.seed
  std::optional<std::filesystem::path> out_dir;  // overrides output.directory
  std::optional<bool> plot;
  unsigned threads = 1;
};

struct StrategySummary {
  Strategy strategy = Strategy::full_opt;
  double success_rate = 0.0;
  std::optional<double> median;  // J
};

struct SizePoint {
  double size = 0.0;  // bits
  std::vector<StrategySummary> strategies;
};

struct Savings {
  Strategy baseline = Strategy::nearest_max_freq;
  std::optional<double> size;     // bits, scenario b only
  std::optional<double> percent;  // median-based; unset when a median is undefined
};

struct RunReport {
  Command command = Command::scenario_a;
  std::string digest;
  std::uint64_t seed = 0;
  std::string timestamp;  // UTC, ISO 8601
  double wall_clock = 0.0;  // s
  std::vector<std::filesystem::path> artifacts;

  std::vector<StrategySummary> summary;  // scenario a
  std::vector<SizePoint> sizes;          // scenario b
  std::vector<std::pair<double, AoiResult>> sweep;  // scenario c
  std::optional<double> optimal_rate;    // scenario c with aoi_max
  std::vector<Savings> savings;          // full_opt against each other strategy
};

/// Runs one experiment and writes its CSVs (plus SVGs when plotting) and
/// report.json into the output directory. Throws ConfigError when the
/// configuration does not match the command and Error when the directory
/// cannot be written.
RunReport run(const ScenarioConfig& config, const RunOptions& options);

/// CSV bodies, exposed for tests. Numbers use %.12g.
std::string scenario_a_requests_csv(const std::vector<StrategyStats>& stats);
std::string scenario_a_summary_csv(const std::vector<StrategyStats>& stats);
std::string scenario_a_cdf_csv(const std::vector<StrategyStats>& stats);
std::string scenario_b_csv(const std::vector<SizePoint>& points);
std::string scenario_c_csv(const std::vector<std::pair<double, AoiResult>>& sweep);

}  // namespace fog2c
