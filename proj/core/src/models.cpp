#include "fog2c/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "fog2c/errors.hpp"

namespace fog2c {
namespace {

std::string fmt_violation(const char* field, const char* rule, double value) {
  std::ostringstream os;
  os << field << " must be " << rule << " (got " << value << ")";
  return os.str();
}

void require(std::vector<std::string>& out, bool ok, const char* field,
             const char* rule, double value) {
  if (!ok || std::isnan(value)) out.push_back(fmt_violation(field, rule, value));
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Upper bound of an interval that a computed budget may exceed by rounding.
bool exceeds(double value, double limit) {
  return value > limit * (1.0 + kRelativeSlack);
}

}  // namespace

std::vector<std::string> check(const WirelessCatalogModel& m) {
  std::vector<std::string> v;
  require(v, m.eps_tx >= 0, "eps_tx", ">= 0", m.eps_tx);
  require(v, m.eps_rx >= 0, "eps_rx", ">= 0", m.eps_rx);
  require(v, m.rate > 0, "rate", "> 0", m.rate);
  require(v, m.base_latency >= 0, "base_latency", ">= 0", m.base_latency);
  require(v, m.mac_mean_delay >= 0, "mac_mean_delay", ">= 0", m.mac_mean_delay);
  return v;
}

std::vector<std::string> check(const WirelessParametricModel& m) {
  std::vector<std::string> v;
  require(v, m.bandwidth > 0, "bandwidth", "> 0", m.bandwidth);
  require(v, m.noise_density > 0, "noise_density", "> 0", m.noise_density);
  require(v, std::isfinite(m.path_loss_db), "path_loss", "finite", m.path_loss_db);
  require(v, m.pa_efficiency > 0 && m.pa_efficiency <= 1, "pa_efficiency",
          "in (0, 1]", m.pa_efficiency);
  require(v, m.circuit_power_tx >= 0, "circuit_power_tx", ">= 0", m.circuit_power_tx);
  require(v, m.circuit_power_rx >= 0, "circuit_power_rx", ">= 0", m.circuit_power_rx);
  require(v, m.rate_max > 0, "rate_max", "> 0", m.rate_max);
  return v;
}

std::vector<std::string> check(const WiredHopModel& m) {
  std::vector<std::string> v;
  require(v, m.eps >= 0, "eps", ">= 0", m.eps);
  require(v, m.capacity > 0, "capacity", "> 0", m.capacity);
  require(v, m.prop_delay >= 0, "prop_delay", ">= 0", m.prop_delay);
  require(v, m.proc_delay >= 0, "proc_delay", ">= 0", m.proc_delay);
  return v;
}

std::vector<std::string> check(const ComputeModel& m) {
  std::vector<std::string> v;
  require(v, m.f_min > 0, "f_min", "> 0", m.f_min);
  require(v, m.f_max >= m.f_min, "f_max", ">= f_min", m.f_max);
  require(v, m.ops_per_cycle > 0, "ops_per_cycle", "> 0", m.ops_per_cycle);
  require(v, m.p_static >= 0, "p_static", ">= 0", m.p_static);
  require(v, m.kappa >= 0, "kappa", ">= 0", m.kappa);
  require(v, m.alpha > 1, "alpha", "> 1", m.alpha);
  return v;
}

std::vector<std::string> check(const ComputerSpec& m) {
  std::vector<std::string> v;
  require(v, m.power > 0, "power", "> 0", m.power);
  require(v, m.perf > 0, "perf", "> 0", m.perf);
  return v;
}

double shannon_min_energy_per_bit(double path_loss_db, double temperature) {
  if (!(temperature > 0)) {
    throw DomainError("shannon_min_energy_per_bit: temperature must be > 0 K");
  }
  return kBoltzmann * temperature * std::numbers::ln2 * db_to_linear(path_loss_db);
}

double compute_energy_per_bit(const ComputerSpec& spec, double flop_per_byte) {
  if (!(flop_per_byte > 0)) {
    throw DomainError("compute_energy_per_bit: intensity must be > 0");
  }
  return spec.power / spec.perf * flop_per_byte / 8.0;
}

Cost wireless_cost_catalog_fixed(const WirelessCatalogModel& m, double bits,
                                 LinkSide side) {
  if (!(bits >= 0)) throw DomainError("wireless_cost_catalog: size must be >= 0");
  double eps = 0.0;
  switch (side) {
    case LinkSide::tx: eps = m.eps_tx; break;
    case LinkSide::rx: eps = m.eps_rx; break;
    case LinkSide::both: eps = m.eps_tx + m.eps_rx; break;
  }
  return {eps * bits, bits / m.rate + m.base_latency};
}

double sample_mac_delay(const WirelessCatalogModel& m, Rng& rng) {
  if (!(m.mac_mean_delay > 0)) return 0.0;
  return std::exponential_distribution<double>(1.0 / m.mac_mean_delay)(rng);
}

Cost wireless_cost_catalog(const WirelessCatalogModel& m, double bits,
                           LinkSide side, Rng& rng) {
  Cost c = wireless_cost_catalog_fixed(m, bits, side);
  c.latency += sample_mac_delay(m, rng);
  return c;
}

double parametric_tx_power(const WirelessParametricModel& m, double rate) {
  if (!(rate >= 0)) throw DomainError("parametric_tx_power: rate must be >= 0");
  if (exceeds(rate, m.rate_max)) {
    throw DomainError("parametric_tx_power: rate exceeds rate_max");
  }
  return m.noise_density * m.bandwidth * std::expm1(std::numbers::ln2 * rate / m.bandwidth) *
         db_to_linear(m.path_loss_db);
}

double parametric_link_energy(const WirelessParametricModel& m, double bits,
                              double rate) {
  if (bits == 0) return 0.0;
  if (!(rate > 0)) throw DomainError("parametric_link_energy: rate must be > 0");
  const double power = parametric_tx_power(m, rate) / m.pa_efficiency +
                       m.circuit_power_tx + m.circuit_power_rx;
  return power * bits / rate;
}

RateChoice optimal_rate(const WirelessParametricModel& m, double bits,
                        double latency_budget) {
  if (!(bits > 0) || !(latency_budget > 0)) {
    throw DomainError("optimal_rate: size and latency budget must be > 0");
  }
  const double lo = bits / latency_budget;
  if (exceeds(lo, m.rate_max)) {
    throw InfeasibleError("optimal_rate: required rate exceeds rate_max");
  }

  // Energy per bit in units of x = rate / bandwidth is
  //   (a * (2^x - 1) + circuits) / (x * B),   a = N0 * B * PL / eta,
  // which is quasi-convex. Its stationary point solves
  //   h(x) = a * (ln2 * x * 2^x - 2^x + 1) - circuits = 0,
  // with h(0) = -circuits and h strictly increasing.
  const double a = m.noise_density * m.bandwidth * db_to_linear(m.path_loss_db) /
                   m.pa_efficiency;
  const double circuits = m.circuit_power_tx + m.circuit_power_rx;
  const auto h = [&](double x) {
    const double p = std::exp2(x);
    return a * (std::numbers::ln2 * x * p - p + 1.0) - circuits;
  };

  double x_star = 0.0;
  if (circuits > 0) {
    double hi = 1.0;
    while (h(hi) < 0 && hi < 1024.0) hi *= 2.0;
    double low = 0.0;
    for (int i = 0; i < 200 && hi - low > 1e-15 * hi; ++i) {
      const double mid = 0.5 * (low + hi);
      (h(mid) < 0 ? low : hi) = mid;
    }
    x_star = 0.5 * (low + hi);
  }

  const double rate = std::clamp(x_star * m.bandwidth, std::min(lo, m.rate_max), m.rate_max);
  return {rate, parametric_link_energy(m, bits, rate), bits / rate};
}

Cost wired_path_cost(std::span<const WiredHopModel> hops, double bits) {
  if (!(bits >= 0)) throw DomainError("wired_path_cost: size must be >= 0");
  Cost total;
  for (const auto& hop : hops) {
    total.energy += hop.eps * bits;
    total.latency += bits / hop.capacity + hop.prop_delay + hop.proc_delay;
  }
  return total;
}

ComputeCost compute_cost(const ComputeModel& m, double n_ops, double frequency) {
  if (!(n_ops >= 0)) throw DomainError("compute_cost: n_ops must be >= 0");
  if (frequency < m.f_min * (1.0 - kRelativeSlack) || exceeds(frequency, m.f_max)) {
    throw DomainError("compute_cost: frequency outside [f_min, f_max]");
  }
  const double time = n_ops / (m.ops_per_cycle * frequency);
  return {time, (m.p_static + m.kappa * std::pow(frequency, m.alpha)) * time};
}

double energy_optimal_frequency(const ComputeModel& m) noexcept {
  if (m.p_static == 0) return 0.0;
  if (m.kappa == 0) return std::numeric_limits<double>::infinity();
  return std::pow(m.p_static / ((m.alpha - 1.0) * m.kappa), 1.0 / m.alpha);
}

FrequencyChoice optimal_frequency(const ComputeModel& m, double n_ops,
                                  double time_budget) {
  if (!(n_ops > 0) || !(time_budget > 0)) {
    throw DomainError("optimal_frequency: n_ops and time budget must be > 0");
  }
  const double deadline_freq = n_ops / (m.ops_per_cycle * time_budget);
  if (exceeds(deadline_freq, m.f_max)) {
    throw InfeasibleError("optimal_frequency: deadline needs more than f_max");
  }
  const double lo = std::min(std::max(m.f_min, deadline_freq), m.f_max);
  const double f = std::clamp(energy_optimal_frequency(m), lo, m.f_max);
  const ComputeCost c = compute_cost(m, n_ops, f);
  return {f, c.energy, c.time};
}

}  // namespace fog2c
