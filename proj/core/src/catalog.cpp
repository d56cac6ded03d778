#include "fog2c/catalog.hpp"

#include <array>
#include <cstdio>
#include <sstream>

namespace fog2c::catalog {
namespace {

constexpr double pJ = 1e-12;
constexpr double ms = 1e-3;

const std::array<WirelessEntry, 5> kWireless{{
    {"shannon", "Shannon limit (83 dB path loss)", "k_B*T*ln2*PL at 290 K", 0.0,
     0.55 * pJ, 0.0, "-", 1e12, 0.0},
    {"wifi", "Wi-Fi link", "Kryszkiewicz et al., Sensors 20(17) 4704, 2020", 20e6,
     4.5e4 * pJ, 3.9e4 * pJ, "1 - 1000 ms", 54e6, 1 * ms},
    {"lte_ue_dl", "LTE UE DL", "Xu et al., SIGCOMM 2020", 20e6, std::nullopt,
     1.7e6 * pJ, "RTT 2.6 ms", 75e6, 2.6 * ms},
    {"5g_ue_dl", "5G UE DL", "Xu et al., SIGCOMM 2020", 100e6, std::nullopt,
     4e5 * pJ, "RTT 2.2 ms", 400e6, 2.2 * ms},
    {"lte_bs_dl", "LTE BS DL", "Auer et al., IEEE Wireless Commun. 18(5), 2011",
     10e6, 4.5e7 * pJ, std::nullopt, "-", 37.5e6, 0.0},
}};

const std::array<WiredEntry, 3> kWired{{
    {"epon_1g", "1G EPON gateway", "EU CoC broadband equipment v8.0, 2021", 1e9,
     3.3, 300 * pJ, 0.5e-5 * ms, 0.5 * ms},
    {"gpon_10g", "10/10G GPON gateway", "EU CoC broadband equipment v8.0, 2021",
     10e9, 5.5, 200 * pJ, 0.5e-5 * ms, 0.5 * ms},
    {"juniper_t1600", "Juniper T1600 core router",
     "Van Heddeghem et al., Photonic Netw. Commun. 24(2), 2012", 640e9, 6572.0,
     1030 * pJ, 0.01 * ms, 27 * ms},
}};

const std::array<ComputerEntry, 4> kComputers{{
    {"henri", "Green500 Nov 2022 (#1)", {"Henri", 31e3, 2038e12}, 5920,
     136 * pJ, 422 * pJ},
    {"frontier", "Top500 Nov 2022 (#1)", {"Frontier", 21100e3, 1102e3 * 1e12},
     873011, 170 * pJ, 527 * pJ},
    {"asus_b9400cea", "Prieto et al., Sustainability 14(19), 2022",
     {"ASUS Expertbook B9400CEA", 33.47, 0.148e12}, 4, 2000 * pJ, 6199 * pJ},
    {"cumulus", "Green500 Nov 2022 (#106)", {"Cumulus", 530e3, 2271.38e12},
     50176, 2069 * pJ, 6410 * pJ},
}};

template <typename Range>
auto find_in(const Range& r, std::string_view key) -> decltype(&*r.begin()) {
  for (const auto& e : r) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

}  // namespace

std::span<const WirelessEntry> wireless() { return kWireless; }
std::span<const WiredEntry> wired() { return kWired; }
std::span<const ComputerEntry> computers() { return kComputers; }

const WirelessEntry* find_wireless(std::string_view key) { return find_in(kWireless, key); }
const WiredEntry* find_wired(std::string_view key) { return find_in(kWired, key); }
const ComputerEntry* find_computer(std::string_view key) { return find_in(kComputers, key); }

WirelessCatalogModel wireless_model(const WirelessEntry& e) {
  return {e.eps_tx.value_or(0.0), e.eps_rx.value_or(0.0), e.assumed_rate,
          e.assumed_base_latency, 0.0};
}

WiredHopModel wired_model(const WiredEntry& e) {
  return {e.eps, e.capacity, e.latency_min, 0.0};
}

std::string render() {
  std::ostringstream os;
  char line[256];
  os << "Wireless links (energy per bit, J/b)\n";
  std::snprintf(line, sizeof line, "  %-14s %-32s %10s %10s %10s  %s\n", "key", "label",
                "B [Hz]", "TX [J/b]", "RX [J/b]", "latency");
  os << line;
  const auto opt = [](const std::optional<double>& v) {
    char b[32];
    if (v) std::snprintf(b, sizeof b, "%.3g", *v);
    else std::snprintf(b, sizeof b, "-");
    return std::string(b);
  };
  for (const auto& e : kWireless) {
    std::snprintf(line, sizeof line, "  %-14s %-32s %10.3g %10s %10s  %s\n",
                  std::string(e.key).c_str(), std::string(e.label).c_str(), e.bandwidth,
                  opt(e.eps_tx).c_str(), opt(e.eps_rx).c_str(),
                  std::string(e.latency_note).c_str());
    os << line << "      source: " << e.source << "\n";
  }
  os << "\nWired hops (incremental energy per bit over idle)\n";
  std::snprintf(line, sizeof line, "  %-14s %-28s %10s %10s %10s  %s\n", "key", "label",
                "cap [b/s]", "P [W]", "eps [J/b]", "latency [s]");
  os << line;
  for (const auto& e : kWired) {
    std::snprintf(line, sizeof line, "  %-14s %-28s %10.3g %10.4g %10.3g  %.3g - %.3g\n",
                  std::string(e.key).c_str(), std::string(e.label).c_str(), e.capacity,
                  e.active_power, e.eps, e.latency_min, e.latency_max);
    os << line << "      source: " << e.source << "\n";
  }
  os << "\nComputers (energy per bit at 71 / 220 Flop/B)\n";
  std::snprintf(line, sizeof line, "  %-14s %-26s %12s %8s %10s %10s %10s\n", "key", "name",
                "perf [Flop/s]", "cores", "P [W]", "eff71", "eff220");
  os << line;
  for (const auto& e : kComputers) {
    std::snprintf(line, sizeof line, "  %-14s %-26s %12.4g %8d %10.4g %10.3g %10.3g\n",
                  std::string(e.key).c_str(), e.spec.name.c_str(), e.spec.perf, e.cores,
                  e.spec.power, compute_energy_per_bit(e.spec, kIntensityLow),
                  compute_energy_per_bit(e.spec, kIntensityHigh));
    os << line << "      source: " << e.source << "\n";
  }
  os << "\nCatalog link rates are assumptions (the measured rows publish none).\n";
  return os.str();
}

}  // namespace fog2c::catalog
