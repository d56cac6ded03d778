#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fog2c::units {

/// Physical kinds accepted in configuration values. Each value is written as
/// "<number> <unit>", e.g. "4.5e4 pJ/b", and stored in SI.
enum class Quantity {
  energy_per_bit,  // J/b
  bit_rate,        // b/s
  time,            // s
  frequency,       // Hz
  power,           // W
  data_size,       // b
  intensity,       // ops/b
  noise_density,   // W/Hz
  path_loss,       // dB
  flop_rate,       // Flop/s
  request_rate,    // 1/s
  kappa,           // W/Hz^alpha
  temperature,     // K
};

/// SI unit tag emitted for a quantity.
std::string_view si_unit(Quantity q) noexcept;

/// Accepted unit spellings, for diagnostics.
std::vector<std::string> accepted_units(Quantity q);

/// Parses "<number> <unit>". Throws ConfigError naming the accepted units
/// when the tag is missing or belongs to another quantity.
double parse(std::string_view text, Quantity q);

/// Shortest exact text for an SI value, tagged with the SI unit.
std::string format(double si_value, Quantity q);

/// Shortest decimal that parses back to the same double.
std::string exact(double v);

}  // namespace fog2c::units
