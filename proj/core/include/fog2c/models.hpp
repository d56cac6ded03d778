#pragma once

#include <span>
#include <string>
#include <vector>

#include "fog2c/rng.hpp"

namespace fog2c {

// All quantities are SI: J, s, Hz, W, bits. Table-style units (pJ/b, kW,
// TFlop/s) are converted when a configuration is parsed.

inline constexpr double kBoltzmann = 1.380649e-23;        // J/K
inline constexpr double kReferenceTemperature = 290.0;    // K

/// Measured transceiver: fixed energy per bit on each side of the link.
struct WirelessCatalogModel {
  double eps_tx = 0.0;          // J/b
  double eps_rx = 0.0;          // J/b
  double rate = 1.0;            // b/s
  double base_latency = 0.0;    // s
  double mac_mean_delay = 0.0;  // s, mean of an exponential MAC delay
};

/// Shannon-based link whose transmit power follows from the chosen rate.
struct WirelessParametricModel {
  double bandwidth = 1.0;         // Hz
  double noise_density = 4.0e-21; // W/Hz
  double path_loss_db = 0.0;
  double pa_efficiency = 1.0;     // (0, 1]
  double circuit_power_tx = 0.0;  // W
  double circuit_power_rx = 0.0;  // W
  double rate_max = 1.0;          // b/s
};

/// One wired segment. eps is incremental over idle power.
struct WiredHopModel {
  double eps = 0.0;         // J/b
  double capacity = 1.0;    // b/s
  double prop_delay = 0.0;  // s
  double proc_delay = 0.0;  // s
};

/// A DVFS-capable processor drawing p_static + kappa * f^alpha while busy.
struct ComputeModel {
  double f_max = 1.0;          // Hz
  double f_min = 1.0;          // Hz
  double ops_per_cycle = 1.0;
  double p_static = 0.0;       // W
  double kappa = 0.0;          // W/Hz^alpha
  double alpha = 3.0;
};

/// Aggregate machine figures as published in rankings (power, peak Flop/s).
struct ComputerSpec {
  std::string name;
  double power = 0.0;  // W
  double perf = 0.0;   // Flop/s
};

enum class LinkSide { tx, rx, both };

struct Cost {
  double energy = 0.0;   // J
  double latency = 0.0;  // s

  Cost& operator+=(const Cost& other) noexcept {
    energy += other.energy;
    latency += other.latency;
    return *this;
  }
  friend Cost operator+(Cost a, const Cost& b) noexcept { return a += b; }
};

struct RateChoice {
  double rate = 0.0;     // b/s
  double energy = 0.0;   // J
  double latency = 0.0;  // s
};

struct ComputeCost {
  double time = 0.0;    // s
  double energy = 0.0;  // J
};

struct FrequencyChoice {
  double frequency = 0.0;  // Hz
  double energy = 0.0;     // J
  double time = 0.0;       // s
};

// Invariant checks. Each returns human-readable violations, empty when valid.
std::vector<std::string> check(const WirelessCatalogModel& m);
std::vector<std::string> check(const WirelessParametricModel& m);
std::vector<std::string> check(const WiredHopModel& m);
std::vector<std::string> check(const ComputeModel& m);
std::vector<std::string> check(const ComputerSpec& m);

/// Minimum transmit energy per bit in the infinite-bandwidth limit:
/// k_B * T * ln 2 scaled by the linear path loss.
double shannon_min_energy_per_bit(double path_loss_db,
                                  double temperature = kReferenceTemperature);

/// Energy per bit of a machine given an aggregate arithmetic intensity in
/// Flop per byte.
double compute_energy_per_bit(const ComputerSpec& spec, double flop_per_byte);

/// Energy and latency of sending `bits` over a catalog link. The MAC delay
/// is one exponential draw from `rng` when mac_mean_delay > 0.
Cost wireless_cost_catalog(const WirelessCatalogModel& m, double bits,
                           LinkSide side, Rng& rng);

/// One exponential MAC delay draw; 0 without consuming randomness when the
/// model has no MAC delay.
double sample_mac_delay(const WirelessCatalogModel& m, Rng& rng);

/// Same cost without the random MAC term.
Cost wireless_cost_catalog_fixed(const WirelessCatalogModel& m, double bits,
                                 LinkSide side);

/// Radiated power needed to sustain `rate` over the link.
double parametric_tx_power(const WirelessParametricModel& m, double rate);

/// Total link energy for `bits` at `rate`: PA input power plus both
/// circuit powers, for the transmission time bits / rate.
double parametric_link_energy(const WirelessParametricModel& m, double bits,
                              double rate);

/// Energy-minimizing rate that delivers `bits` within `latency_budget`.
RateChoice optimal_rate(const WirelessParametricModel& m, double bits,
                        double latency_budget);

Cost wired_path_cost(std::span<const WiredHopModel> hops, double bits);

ComputeCost compute_cost(const ComputeModel& m, double n_ops, double frequency);

/// Energy-minimizing constant clock for `n_ops` within `time_budget`.
FrequencyChoice optimal_frequency(const ComputeModel& m, double n_ops,
                                  double time_budget);

/// Frequency minimizing energy per operation, ignoring deadlines.
double energy_optimal_frequency(const ComputeModel& m) noexcept;

/// Relative slack used when a budget equals a capacity limit up to rounding.
inline constexpr double kRelativeSlack = 1e-12;

}  // namespace fog2c
