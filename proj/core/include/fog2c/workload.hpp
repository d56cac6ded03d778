#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fog2c/rng.hpp"

namespace fog2c {

/// A strictly positive scalar distribution.
struct Distribution {
  enum class Kind { constant, uniform, lognormal };

  Kind kind = Kind::constant;
  // constant: value = a. uniform: [a, b]. lognormal: median a, ln X has
  // standard deviation b.
  double a = 1.0;
  double b = 0.0;

  static Distribution constant(double v) { return {Kind::constant, v, 0.0}; }
  static Distribution uniform(double lo, double hi) { return {Kind::uniform, lo, hi}; }
  static Distribution lognormal(double median, double sigma) { return {Kind::lognormal, median, sigma}; }

  double sample(Rng& rng) const;
  double mean() const;
  std::vector<std::string> check() const;
};

struct SourceWeight {
  std::string device;
  double weight = 1.0;
  // Fixed device-to-AP association; unset lets the allocator choose.
  std::optional<std::string> ap;
};

struct RequestDistribution {
  Distribution size;       // bits
  Distribution intensity;  // operations per bit
  Distribution deadline;   // s
  double result_size = 0.0;  // bits returned to the device
  std::vector<SourceWeight> sources;

  std::vector<std::string> check() const;
};

struct Request {
  std::uint64_t id = 0;
  std::string source;
  std::optional<std::string> assigned_ap;
  double size = 0.0;       // bits
  double intensity = 0.0;  // operations per bit
  double deadline = 0.0;   // s after generation
  double gen_time = 0.0;   // s
  double result_size = 0.0;

  double n_ops() const noexcept { return size * intensity; }
};

/// `n` independent requests, fully determined by `seed`. All gen_time = 0.
std::vector<Request> sample_requests(const RequestDistribution& dist, std::size_t n,
                                     std::uint64_t seed);

/// Requests at k / rate for every k with k < rate * horizon.
std::vector<Request> periodic_stream(double rate, const Request& prototype, double horizon);

}  // namespace fog2c
