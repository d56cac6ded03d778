#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fog2c/rng.hpp"
#include "fog2c/topology.hpp"
#include "fog2c/workload.hpp"

namespace fog2c {

enum class Strategy {
  full_opt,          // free choice of AP, compute node, rate and frequency
  nearest_opt_freq,  // nearest fog node computes at its optimal frequency
  nearest_max_freq,  // nearest fog node computes at f_max
  collocated,        // fog node sharing a site with the chosen AP computes
  local_device,      // the device computes, nothing is offloaded
};

std::string_view to_string(Strategy s) noexcept;
std::optional<Strategy> parse_strategy(std::string_view s) noexcept;

/// Which tiers' energy is counted. Wireless link energy belongs to the
/// device side; wired transport and fog/cloud processing to the network side.
struct AccountingScope {
  bool include_device_energy = false;
  bool include_fog_cloud_energy = true;

  static constexpr AccountingScope fog_cloud() { return {false, true}; }
  static constexpr AccountingScope all() { return {true, true}; }
  bool valid() const noexcept { return include_device_energy || include_fog_cloud_energy; }
  friend bool operator==(const AccountingScope&, const AccountingScope&) = default;
};

struct EnergyBreakdown {
  double device = 0.0;     // J, wireless links and local processing
  double fog_cloud = 0.0;  // J, wired transport and fog/cloud processing

  double scoped(AccountingScope scope) const noexcept {
    return (scope.include_device_energy ? device : 0.0) +
           (scope.include_fog_cloud_energy ? fog_cloud : 0.0);
  }
};

struct Allocation {
  std::uint64_t request_id = 0;
  std::string chosen_ap;
  std::string compute_node;
  Path forward_path;  // AP to compute node
  Path return_path;   // compute node to AP, only when results are returned
  double wireless_rate = 0.0;  // b/s on the uplink
  double frequency = 0.0;      // Hz
  EnergyBreakdown breakdown;
  std::optional<double> energy;   // J under the scope; unset if infeasible
  std::optional<double> latency;  // s; unset if infeasible
  bool feasible = false;
};

/// Minimum-energy feasible allocation of one request under `strategy`.
/// Throws ConfigError when the strategy does not apply to the topology.
Allocation allocate(const Request& request, const Topology& topology, Strategy strategy,
                    AccountingScope scope, Rng& rng);

/// Exhaustive search over (AP, compute node) pairs with inner rate and
/// frequency optimization. Ties: lower latency, then node id, then AP id.
Allocation optimize_full(const Request& request, const Topology& topology,
                         AccountingScope scope, Rng& rng);

struct CdfPoint {
  double energy = 0.0;    // J
  double fraction = 0.0;  // of all requests, feasible or not
};

/// Empirical CDF over all requests; saturates at the success fraction.
std::vector<CdfPoint> energy_cdf(std::span<const Allocation> allocations);

/// Median over all requests with failures counted as +inf. Undefined when
/// the middle element (upper middle for even counts) is a failure.
std::optional<double> median_energy(std::span<const Allocation> allocations);

double success_rate(std::span<const Allocation> allocations) noexcept;

struct StrategyStats {
  Strategy strategy = Strategy::full_opt;
  std::vector<Allocation> allocations;
  std::vector<CdfPoint> cdf;
  std::optional<double> median;
  double success_rate = 0.0;
  double total_energy = 0.0;  // J over feasible requests
  std::size_t feasible = 0;
};

/// Applies each strategy to every request. Request i draws its channel
/// (MAC delays) from a stream keyed by (seed, request id) that all
/// strategies share, so results match the sequential order for any thread
/// count and a strategy never perturbs another.
std::vector<StrategyStats> run_scenario(std::span<const Request> requests,
                                        const Topology& topology,
                                        std::span<const Strategy> strategies,
                                        AccountingScope scope, std::uint64_t seed,
                                        unsigned threads = 1);

/// Percentage of `baseline` saved by `candidate`; nullopt if either is undefined.
std::optional<double> savings_percent(std::optional<double> candidate,
                                      std::optional<double> baseline);

}  // namespace fog2c
