#include "fog2c/units.hpp"

#include <array>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

#include "fog2c/errors.hpp"

namespace fog2c::units {
namespace {

struct Scale {
  std::string_view unit;
  double factor;
};

struct Table {
  Quantity q;
  std::string_view si;
  std::vector<Scale> scales;
};

const std::vector<Table>& tables() {
  static const std::vector<Table> t{
      {Quantity::energy_per_bit, "J/b",
       {{"J/b", 1.0}, {"mJ/b", 1e-3}, {"uJ/b", 1e-6}, {"nJ/b", 1e-9}, {"pJ/b", 1e-12}, {"fJ/b", 1e-15}}},
      {Quantity::bit_rate, "b/s",
       {{"b/s", 1.0}, {"kb/s", 1e3}, {"Mb/s", 1e6}, {"Gb/s", 1e9}, {"Tb/s", 1e12}}},
      {Quantity::time, "s", {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}, {"min", 60.0}}},
      {Quantity::frequency, "Hz", {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}}},
      {Quantity::power, "W", {{"W", 1.0}, {"uW", 1e-6}, {"mW", 1e-3}, {"kW", 1e3}, {"MW", 1e6}}},
      {Quantity::data_size, "b",
       {{"b", 1.0}, {"kb", 1e3}, {"Mb", 1e6}, {"Gb", 1e9}, {"B", 8.0}, {"kB", 8e3}, {"MB", 8e6}, {"GB", 8e9}}},
      {Quantity::intensity, "ops/b",
       {{"ops/b", 1.0}, {"ops/B", 0.125}, {"Flop/b", 1.0}, {"Flop/B", 0.125}}},
      {Quantity::noise_density, "W/Hz", {{"W/Hz", 1.0}, {"dBm/Hz", std::nan("")}}},
      {Quantity::path_loss, "dB", {{"dB", 1.0}}},
      {Quantity::flop_rate, "Flop/s",
       {{"Flop/s", 1.0}, {"GFlop/s", 1e9}, {"TFlop/s", 1e12}, {"PFlop/s", 1e15}}},
      {Quantity::request_rate, "/s", {{"/s", 1.0}, {"1/s", 1.0}, {"/ms", 1e3}, {"1/ms", 1e3}}},
      {Quantity::kappa, "W/Hz^alpha", {{"W/Hz^alpha", 1.0}}},
      {Quantity::temperature, "K", {{"K", 1.0}}},
  };
  return t;
}

const Table& table(Quantity q) {
  for (const auto& t : tables()) {
    if (t.q == q) return t;
  }
  return tables().front();
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::string list_units(Quantity q) {
  std::string out;
  for (const auto& u : accepted_units(q)) {
    if (!out.empty()) out += ", ";
    out += u;
  }
  return out;
}

}  // namespace

std::string_view si_unit(Quantity q) noexcept { return table(q).si; }

std::vector<std::string> accepted_units(Quantity q) {
  std::vector<std::string> out;
  for (const auto& s : table(q).scales) out.emplace_back(s.unit);
  return out;
}

double parse(std::string_view text, Quantity q) {
  const std::string s = trim(text);
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  const double number = std::strtod(begin, &end);
  if (end == begin || errno == ERANGE) {
    throw ConfigError("'" + s + "' does not start with a number");
  }
  const std::string unit = trim(std::string_view(end));
  if (unit.empty()) {
    throw ConfigError("'" + s + "' has no unit; expected one of " + list_units(q));
  }
  for (const auto& sc : table(q).scales) {
    if (sc.unit != unit) continue;
    if (unit == "dBm/Hz") return std::pow(10.0, (number - 30.0) / 10.0);
    return number * sc.factor;
  }
  throw ConfigError("unit mismatch in '" + s + "': expected one of " + list_units(q));
}

std::string exact(double v) {
  char buf[40];
  for (int precision = 6; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string format(double si_value, Quantity q) {
  return exact(si_value) + " " + std::string(si_unit(q));
}

}  // namespace fog2c::units
