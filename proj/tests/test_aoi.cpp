#include <doctest.h>

#include <cmath>

#include "fog2c/aoi.hpp"
#include "fog2c/errors.hpp"
#include "oracles.hpp"

using namespace fog2c;

namespace {

// 1 ms slots, 1e4-bit requests, CPU time 4 ms at the energy-optimal 1 GHz.
AoiScenario light() {
  AoiScenario s;
  s.rate = 100;
  s.slot_duration = 1e-3;
  s.size = 1e4;
  s.intensity = 400;  // 4e6 ops
  s.wireless.bandwidth = 1e6;
  s.wireless.noise_density = 1.380649e-23 * 290;
  s.wireless.path_loss_db = 90;
  s.wireless.pa_efficiency = 0.5;
  s.wireless.circuit_power_tx = 0.05;
  s.wireless.rate_max = 2e7;
  s.compute.f_max = 3e9;
  s.compute.f_min = 1e8;
  s.compute.ops_per_cycle = 1;
  s.compute.p_static = 2;
  s.compute.kappa = 1e-27;
  s.horizon = 10;
  s.warmup = 1;
  return s;
}

double slot_tx_energy(const AoiScenario& s) {
  return oracle::link_energy(s.wireless, s.size, s.size / s.slot_duration);
}

}  // namespace

TEST_CASE("single request sanity case") {
  AoiScenario s = light();
  s.rate = 0.5;  // one request in a 1 s horizon
  s.horizon = 1;
  s.warmup = 0;
  const AoiTrace tr = simulate_trace(s);
  REQUIRE(tr.samples.size() == 1);
  CHECK(tr.samples[0].completion == doctest::Approx(5e-3));
  // Sawtooth: t until completion, then t - 0. The reference stays 0 because
  // the single request was generated at 0.
  CHECK(tr.result.mean_aoi == doctest::Approx(0.5));
  CHECK(tr.result.completed == 1);
}

TEST_CASE("light load matches D + 1/(2 lambda)") {
  for (double period_ms : {10.0, 16.0, 25.0, 40.0, 100.0}) {
    AoiScenario s = light();
    s.rate = 1e3 / period_ms;
    const AoiResult r = simulate(s);
    const double expect = 5e-3 + 0.5 / s.rate;
    CAPTURE(period_ms);
    CHECK(r.mean_aoi == doctest::Approx(expect).epsilon(0.02));
    CHECK_FALSE(r.diverged);
    CHECK(r.frequency == doctest::Approx(1e9));
  }
}

TEST_CASE("trace matches the Lindley recursion") {
  for (double rate : {90.0, 230.0, 333.0, 999.0, 1500.0}) {
    for (int hops : {0, 2}) {
      AoiScenario s = light();
      s.rate = rate;
      s.horizon = 2;
      s.warmup = 0.2;
      s.intensity = 100;
      for (int h = 0; h < hops; ++h) s.wired.push_back({1e-9, 2e7 + 1e7 * h, 1e-4, 5e-5});
      const AoiTrace tr = simulate_trace(s);
      const auto ref = oracle::lindley(s, tr.result.frequency);
      REQUIRE(ref.size() == tr.samples.size());
      CAPTURE(rate);
      CAPTURE(hops);
      for (std::size_t k = 0; k < ref.size(); ++k) {
        const AoiSample& x = tr.samples[k];
        CHECK(x.tx_start == doctest::Approx(ref[k].tx_start).epsilon(1e-12));
        CHECK(x.tx_end == doctest::Approx(ref[k].tx_end).epsilon(1e-12));
        CHECK(x.compute_start == doctest::Approx(ref[k].compute_start).epsilon(1e-12));
        CHECK(x.compute_end == doctest::Approx(ref[k].compute_end).epsilon(1e-12));
        // Per-request monotonicity.
        CHECK(x.gen_time <= x.tx_start);
        CHECK(x.tx_start < x.tx_end);
        CHECK(x.tx_end <= x.compute_start);
        CHECK(x.compute_start < x.compute_end);
        CHECK(x.compute_end == x.completion);
        if (k > 0) {
          // FIFO on every server, no overtaking.
          CHECK(x.tx_start >= tr.samples[k - 1].tx_end * (1 - 1e-15));
          CHECK(x.compute_start >= tr.samples[k - 1].compute_end * (1 - 1e-15));
          CHECK(x.completion > tr.samples[k - 1].completion);
        }
        // Transmissions start on slot boundaries.
        const double slots = x.tx_start / s.slot_duration;
        CHECK(std::abs(slots - std::round(slots)) < 1e-6);
      }
    }
  }
}

TEST_CASE("mean AoI equals a fine sampling of the sawtooth") {
  AoiScenario s = light();
  s.rate = 420;
  s.horizon = 1;
  s.warmup = 0.1;
  s.intensity = 200;
  const AoiTrace tr = simulate_trace(s);
  std::vector<double> gen, done;
  for (const auto& x : tr.samples) {
    gen.push_back(x.gen_time);
    done.push_back(x.completion);
  }
  CHECK(tr.result.mean_aoi ==
        doctest::Approx(oracle::sampled_mean_aoi(gen, done, s.warmup, s.horizon, 2000000)).epsilon(1e-4));
}

TEST_CASE("energy closure over the window") {
  for (double rate : {150.0, 700.0, 1800.0}) {
    AoiScenario s = light();
    s.rate = rate;
    s.horizon = 3;
    s.warmup = 0.3;
    s.intensity = 150;
    const AoiTrace tr = simulate_trace(s);
    const auto part = [&](double e, double a, double b) {
      const double ov = std::max(0.0, std::min(b, s.horizon) - std::max(a, s.warmup));
      return e * ov / (b - a);
    };
    double energy = 0;
    for (const auto& x : tr.samples) {
      energy += part(x.tx_energy, x.tx_start, x.tx_end);
      energy += part(x.compute_energy, x.compute_start, x.compute_end);
      CHECK(x.tx_energy == doctest::Approx(slot_tx_energy(s)).epsilon(1e-12));
    }
    CAPTURE(rate);
    CHECK(tr.result.mean_power * (s.horizon - s.warmup) == doctest::Approx(energy).epsilon(1e-9));
  }
}

TEST_CASE("request conservation at the horizon") {
  for (double rate : {50.0, 999.0, 1200.0, 3000.0}) {
    AoiScenario s = light();
    s.rate = rate;
    s.horizon = 1.5;
    s.warmup = 0.1;
    s.wired = {{1e-9, 1e8, 1e-3, 0}};
    const AoiResult r = simulate(s);
    CHECK(r.generated == r.completed + r.in_flight + r.queued);
    CHECK(r.generated == static_cast<std::size_t>(std::ceil(rate * s.horizon - 1e-6)));
  }
}

TEST_CASE("overload diverges at the saturation power") {
  AoiScenario s = light();
  s.intensity = 100;  // CPU 1 ms per request at 1 GHz; TX is the bottleneck
  s.horizon = 4;
  s.warmup = 0.4;
  s.rate = 1500;
  const AoiResult r = simulate(s);
  CHECK(r.diverged);
  const double f = aoi_cpu_frequency(s);
  const double cpu = (s.compute.p_static + s.compute.kappa * std::pow(f, 3)) * s.n_ops() / f;
  const double saturated = (slot_tx_energy(s) + cpu) / s.slot_duration;
  CHECK(r.mean_power == doctest::Approx(saturated).epsilon(0.01));
  CHECK(r.tx_utilization == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("AoI never beats the unqueued bound") {
  for (double rate : {20.0, 77.0, 150.0, 240.0, 260.0, 500.0}) {
    AoiScenario s = light();
    s.rate = rate;
    s.horizon = 3;
    s.warmup = 0.3;
    const AoiResult r = simulate(s);
    const double f = aoi_cpu_frequency(s);
    const double d_min = s.slot_duration + s.n_ops() / f;
    CAPTURE(rate);
    CHECK(r.mean_aoi >= (d_min + 0.5 / rate) * (1 - 1e-6));
  }
}

TEST_CASE("halving the slot keeps the light-load law") {
  AoiScenario a = light();
  a.rate = 50;
  AoiScenario b = a;
  b.slot_duration = 0.5e-3;
  const double da = a.slot_duration + 4e-3, db = b.slot_duration + 4e-3;
  CHECK(simulate(a).mean_aoi == doctest::Approx(da + 0.01).epsilon(0.02));
  CHECK(simulate(b).mean_aoi == doctest::Approx(db + 0.01).epsilon(0.02));
  CHECK(simulate(a).mean_aoi - simulate(b).mean_aoi == doctest::Approx(0.5e-3).epsilon(0.05));
}

TEST_CASE("cpu frequency rule") {
  AoiScenario s = light();
  s.rate = 10;
  CHECK(aoi_cpu_frequency(s) == doctest::Approx(1e9));
  s.rate = 500;  // 500 * 4e6 ops/s needs 2 GHz
  CHECK(aoi_cpu_frequency(s) == doctest::Approx(2e9));
  s.rate = 5000;  // throughput capped by one request per slot, then by f_max
  CHECK(aoi_cpu_frequency(s) == doctest::Approx(3e9));
}

TEST_CASE("sweep and optimal rate") {
  AoiScenario s = light();
  s.intensity = 100;
  s.horizon = 2;
  s.warmup = 0.2;
  const std::vector<double> rates{1000, 100, 500, 250, 1250};
  const auto sweep = sweep_rate(s, rates, 3);
  REQUIRE(sweep.size() == rates.size());
  for (std::size_t i = 1; i < sweep.size(); ++i) CHECK(sweep[i].first > sweep[i - 1].first);
  AoiScenario one = s;
  one.rate = 250;
  CHECK(sweep[1].second.mean_aoi == simulate(one).mean_aoi);
  CHECK(sweep[1].second.mean_power == simulate(one).mean_power);
  const auto single = sweep_rate(s, std::vector<double>{250}, 1);
  CHECK(single[0].second.mean_aoi == sweep[1].second.mean_aoi);

  CHECK_FALSE(optimal_rate_for_aoi(s, 1e-4, rates).has_value());
  CHECK(optimal_rate_for_aoi(s, 1e3, rates) == 100.0);
  // Exhaustive check of the rule on the grid.
  const double aoi_max = 4e-3;
  std::optional<double> expect;
  double best = oracle::kInf;
  for (const auto& [rate, r] : sweep) {
    if (r.mean_aoi <= aoi_max && r.mean_power < best) {
      best = r.mean_power;
      expect = rate;
    }
  }
  CHECK(optimal_rate_for_aoi(s, aoi_max, rates) == expect);
  CHECK_THROWS_AS(sweep_rate(s, std::vector<double>{}, 1), DomainError);
}

TEST_CASE("invalid scenarios are rejected") {
  AoiScenario s = light();
  s.size = 1e6;  // needs 1 Gb/s in a 1 ms slot
  CHECK_THROWS_AS(simulate(s), ConfigError);
  s = light();
  s.warmup = s.horizon;
  CHECK_THROWS_AS(simulate(s), ConfigError);
  CHECK(light().check().empty());
}

TEST_CASE("idle power adds to the mean") {
  AoiScenario s = light();
  const AoiResult base = simulate(s);
  s.idle_power_tx = 0.1;
  s.idle_power_cpu = 0.2;
  const AoiResult idle = simulate(s);
  const double extra = 0.1 * (1 - base.tx_utilization) + 0.2 * (1 - base.cpu_utilization);
  CHECK(idle.mean_power - base.mean_power == doctest::Approx(extra).epsilon(1e-9));
}
