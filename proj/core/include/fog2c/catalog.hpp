#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "fog2c/models.hpp"

namespace fog2c::catalog {

/// A measured wireless transceiver row. Missing table cells are nullopt.
struct WirelessEntry {
  std::string_view key;
  std::string_view label;
  std::string_view source;
  double bandwidth;                // Hz, 0 for the infinite-bandwidth bound
  std::optional<double> eps_tx;    // J/b
  std::optional<double> eps_rx;    // J/b
  std::string_view latency_note;
  // Assumed link throughput (b/s) used when the row backs a catalog link;
  // the measured rows do not publish one.
  double assumed_rate;
  double assumed_base_latency;     // s
};

struct WiredEntry {
  std::string_view key;
  std::string_view label;
  std::string_view source;
  double capacity;      // b/s
  double active_power;  // W
  double eps;           // J/b, incremental over idle
  double latency_min;   // s
  double latency_max;   // s
};

struct ComputerEntry {
  std::string_view key;
  std::string_view source;
  ComputerSpec spec;
  int cores;
  double eff_low;   // J/b at 71 Flop/B, as tabulated
  double eff_high;  // J/b at 220 Flop/B, as tabulated
};

// The published aggregate intensities are 71-220 Flop per byte; the
// tabulated pJ/b values are only consistent with Flop/B, not GFlop/B.
inline constexpr double kIntensityLow = 71.0;
inline constexpr double kIntensityHigh = 220.0;

std::span<const WirelessEntry> wireless();
std::span<const WiredEntry> wired();
std::span<const ComputerEntry> computers();

const WirelessEntry* find_wireless(std::string_view key);
const WiredEntry* find_wired(std::string_view key);
const ComputerEntry* find_computer(std::string_view key);

/// Catalog link model for a wireless row (missing side energies become 0).
WirelessCatalogModel wireless_model(const WirelessEntry& e);

/// Wired hop for a row, using the lower end of its latency range.
WiredHopModel wired_model(const WiredEntry& e);

/// Human-readable table with SI values and sources.
std::string render();

}  // namespace fog2c::catalog
