#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fog2c/allocator.hpp"
#include "fog2c/aoi.hpp"
#include "fog2c/topology.hpp"
#include "fog2c/workload.hpp"

namespace fog2c {

enum class ScenarioKind { a, b, c };

std::string_view to_string(ScenarioKind k) noexcept;

/// Periodic source feeding the AoI pipeline.
struct PeriodicSource {
  std::string source;
  double size = 0.0;       // bits
  double intensity = 0.0;  // ops/b
};

struct WorkloadConfig {
  std::size_t request_count = 0;
  std::optional<RequestDistribution> distribution;
  std::optional<PeriodicSource> periodic;
};

struct ExperimentConfig {
  ScenarioKind scenario = ScenarioKind::a;
  std::uint64_t seed = 0;
  std::vector<Strategy> strategies;
  AccountingScope scope;
  std::vector<double> size_grid;  // bits, scenario b
  std::vector<double> rate_grid;  // requests/s, scenario c
  double slot_duration = 0.0;     // s
  double horizon = 0.0;           // s
  double warmup = 0.0;            // s
  std::optional<std::string> fog;
  std::optional<double> aoi_max;  // s
  double idle_power_tx = 0.0;     // W
  double idle_power_cpu = 0.0;    // W
};

struct OutputConfig {
  std::string directory = "out";
  bool plot = false;
};

struct ScenarioConfig {
  Topology topology;
  WorkloadConfig workload;
  ExperimentConfig experiment;
  OutputConfig output;
};

/// Parses and fully validates a JSON scenario. Every problem found is
/// reported in one ConfigError, each prefixed with its key path.
ScenarioConfig parse_config(std::string_view text);

/// Canonical JSON with SI unit tags. parse_config(emit_config(c)) yields a
/// configuration with the same digest.
std::string emit_config(const ScenarioConfig& config);

/// Hex digest of the semantic content (everything but the output section).
std::string config_digest(const ScenarioConfig& config);

/// AoI pipeline described by a scenario-c configuration, at the first grid rate.
AoiScenario build_aoi_scenario(const ScenarioConfig& config);

}  // namespace fog2c
