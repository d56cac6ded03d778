#include "fog2c/workload.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "fog2c/errors.hpp"

namespace fog2c {

double Distribution::sample(Rng& rng) const {
  switch (kind) {
    case Kind::constant:
      return a;
    case Kind::uniform:
      if (a == b) return a;
      return std::uniform_real_distribution<double>(a, b)(rng);
    case Kind::lognormal:
      return std::lognormal_distribution<double>(std::log(a), b)(rng);
  }
  return a;
}

double Distribution::mean() const {
  switch (kind) {
    case Kind::constant: return a;
    case Kind::uniform: return 0.5 * (a + b);
    case Kind::lognormal: return a * std::exp(0.5 * b * b);
  }
  return a;
}

std::vector<std::string> Distribution::check() const {
  std::vector<std::string> v;
  std::ostringstream os;
  switch (kind) {
    case Kind::constant:
      if (!(a > 0) || !std::isfinite(a)) os << "constant value must be finite and > 0 (got " << a << ")";
      break;
    case Kind::uniform:
      if (!(a > 0) || !(b >= a) || !std::isfinite(b)) {
        os << "uniform bounds must satisfy 0 < min <= max (got [" << a << ", " << b << "])";
      }
      break;
    case Kind::lognormal:
      if (!(a > 0) || !std::isfinite(a) || !(b >= 0) || !std::isfinite(b)) {
        os << "lognormal needs median > 0 and sigma >= 0 (got " << a << ", " << b << ")";
      }
      break;
  }
  if (!os.str().empty()) v.push_back(os.str());
  return v;
}

std::vector<std::string> RequestDistribution::check() const {
  std::vector<std::string> v;
  for (const auto& e : size.check()) v.push_back("size: " + e);
  for (const auto& e : intensity.check()) v.push_back("intensity: " + e);
  for (const auto& e : deadline.check()) v.push_back("deadline: " + e);
  if (!(result_size >= 0)) v.emplace_back("result_size must be >= 0");
  if (sources.empty()) v.emplace_back("at least one source device is required");
  double total = 0.0;
  for (const auto& s : sources) {
    if (!(s.weight >= 0) || !std::isfinite(s.weight)) v.push_back("source '" + s.device + "': weight must be >= 0");
    else total += s.weight;
  }
  if (!sources.empty() && !(total > 0)) v.emplace_back("source weights must not all be zero");
  return v;
}

std::vector<Request> sample_requests(const RequestDistribution& dist, std::size_t n,
                                     std::uint64_t seed) {
  if (auto issues = dist.check(); !issues.empty()) throw ConfigError(std::move(issues));

  std::vector<double> weights;
  weights.reserve(dist.sources.size());
  for (const auto& s : dist.sources) weights.push_back(s.weight);

  Rng rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::vector<Request> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const SourceWeight& src = dist.sources[pick(rng)];
    Request r;
    r.id = i;
    r.source = src.device;
    r.assigned_ap = src.ap;
    r.size = dist.size.sample(rng);
    r.intensity = dist.intensity.sample(rng);
    r.deadline = dist.deadline.sample(rng);
    r.result_size = dist.result_size;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Request> periodic_stream(double rate, const Request& prototype, double horizon) {
  if (!(rate > 0) || !(horizon > 0)) {
    throw DomainError("periodic_stream: rate and horizon must be > 0");
  }
  // k < rate * horizon, with a guard so 0.9/ms over 1 s gives exactly 900.
  const double limit = rate * horizon;
  auto count = static_cast<std::size_t>(std::ceil(limit - 1e-9 * std::max(1.0, limit)));
  count = std::max<std::size_t>(count, 1);
  std::vector<Request> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Request r = prototype;
    r.id = k;
    r.gen_time = static_cast<double>(k) / rate;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace fog2c
