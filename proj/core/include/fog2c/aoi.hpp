#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fog2c/models.hpp"

namespace fog2c {

/// Periodic source -> slotted wireless uplink -> optional wired hops -> fog
/// CPU, with a FIFO buffer in front of every server.
struct AoiScenario {
  double rate = 1.0;           // requests/s
  double slot_duration = 1.0;  // s
  double size = 1.0;           // bits per request
  double intensity = 1.0;      // operations per bit
  WirelessParametricModel wireless;
  std::vector<WiredHopModel> wired;
  ComputeModel compute;
  double horizon = 1.0;  // s
  double warmup = 0.0;   // s, excluded from statistics
  double idle_power_tx = 0.0;   // W
  double idle_power_cpu = 0.0;  // W

  std::vector<std::string> check() const;
  double n_ops() const noexcept { return size * intensity; }
};

struct AoiResult {
  double mean_aoi = 0.0;    // s
  double mean_power = 0.0;  // W
  double tx_utilization = 0.0;
  double cpu_utilization = 0.0;
  bool diverged = false;
  double frequency = 0.0;   // Hz, CPU operating point
  std::size_t generated = 0;
  std::size_t completed = 0;   // by the horizon
  std::size_t in_flight = 0;   // in service or between servers at the horizon
  std::size_t queued = 0;      // waiting in a FIFO at the horizon
};

/// Per-request timeline. Times are absolute seconds.
struct AoiSample {
  double gen_time = 0.0;
  double tx_start = 0.0;
  double tx_end = 0.0;
  double compute_start = 0.0;
  double compute_end = 0.0;
  double completion = 0.0;
  double tx_energy = 0.0;       // J
  double wired_energy = 0.0;    // J
  double compute_energy = 0.0;  // J
};

struct AoiTrace {
  AoiResult result;
  std::vector<AoiSample> samples;  // in generation order
};

/// CPU clock for a scenario: the energy-optimal frequency, raised to keep up
/// with the request throughput that actually reaches the CPU, capped at f_max.
double aoi_cpu_frequency(const AoiScenario& s);

AoiResult simulate(const AoiScenario& scenario);
AoiTrace simulate_trace(const AoiScenario& scenario);

/// Independent simulate() runs, returned in ascending rate order.
std::vector<std::pair<double, AoiResult>> sweep_rate(const AoiScenario& scenario,
                                                     std::span<const double> rates,
                                                     unsigned threads = 1);

/// Lowest-power grid rate whose mean AoI is within `aoi_max`; ties go to
/// the smaller rate. nullopt when no grid point qualifies.
std::optional<double> optimal_rate_for_aoi(const AoiScenario& scenario, double aoi_max,
                                           std::span<const double> rate_grid,
                                           unsigned threads = 1);

}  // namespace fog2c
