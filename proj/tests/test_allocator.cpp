#include <doctest.h>

#include <cmath>
#include <limits>

#include "fog2c/allocator.hpp"
#include "fog2c/errors.hpp"
#include "fog2c/workload.hpp"
#include "oracles.hpp"

using namespace fog2c;

namespace {

Allocation run(const oracle::Instance& inst, Strategy s,
               AccountingScope scope = AccountingScope::fog_cloud()) {
  Rng rng(0);
  return allocate(inst.request, inst.topology, s, scope, rng);
}

Allocation feasible(double e) {
  Allocation a;
  a.feasible = true;
  a.energy = e;
  a.latency = 0;
  return a;
}

double energy_or_inf(const Allocation& a) {
  return a.feasible ? *a.energy : std::numeric_limits<double>::infinity();
}

}  // namespace

TEST_CASE("two-fog instance") {
  const auto inst = oracle::two_fog();
  const Allocation full = run(inst, Strategy::full_opt);
  const Allocation opt = run(inst, Strategy::nearest_opt_freq);
  const Allocation max = run(inst, Strategy::nearest_max_freq);
  REQUIRE(full.feasible);
  REQUIRE(opt.feasible);
  REQUIRE(max.feasible);

  CHECK(*max.energy == doctest::Approx(9.867).epsilon(5e-4));
  CHECK(*opt.energy == doctest::Approx(7.018).epsilon(5e-4));
  CHECK(opt.frequency == doctest::Approx(1.710e9).epsilon(5e-4));
  CHECK(*full.energy == doctest::Approx(1.521).epsilon(5e-4));
  CHECK(full.compute_node == "fog2");
  CHECK(full.frequency == doctest::Approx(8.073e8).epsilon(5e-4));
  CHECK(full.breakdown.fog_cloud == doctest::Approx(1.521).epsilon(5e-4));
  CHECK(opt.compute_node == "fog1");
  CHECK(max.frequency == 3e9);

  // Independent grid oracle.
  CHECK(*full.energy == doctest::Approx(oracle::two_fog_grid(inst)).epsilon(1e-3));
  CHECK(*opt.energy == doctest::Approx(oracle::two_fog_grid(inst, "fog1")).epsilon(1e-3));
  CHECK(*full.latency <= inst.request.deadline * (1 + 1e-9));
}

TEST_CASE("two-fog instance with a parametric uplink matches the 2-D grid") {
  const auto inst = oracle::two_fog(true);
  const Allocation full = run(inst, Strategy::full_opt, AccountingScope::all());
  const double grid = oracle::full_search(inst.request, inst.topology, AccountingScope::all(), 3000, 3000);
  REQUIRE(full.feasible);
  CHECK(*full.energy <= grid * (1 + 1e-6));
  CHECK(*full.energy >= grid * (1 - 1e-2));
  CHECK(full.breakdown.device > 0);
  CHECK(full.wireless_rate > 0);
}

TEST_CASE("random instances match exhaustive search") {
  int feasible_cases = 0;
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const auto inst = oracle::random_instance(seed);
    REQUIRE(inst.topology.validate().empty());
    for (auto scope : {AccountingScope::all(), AccountingScope::fog_cloud(), AccountingScope{true, false}}) {
      Rng rng(seed);
      const Allocation a = optimize_full(inst.request, inst.topology, scope, rng);
      const double grid = oracle::full_search(inst.request, inst.topology, scope, 1500, 1500);
      CAPTURE(seed);
      CHECK(a.feasible == std::isfinite(grid));
      if (!a.feasible || !std::isfinite(grid)) continue;
      ++feasible_cases;
      CHECK(*a.energy <= grid * (1 + 1e-6) + 1e-15);
      CHECK(*a.energy >= grid * (1 - 1e-2) - 1e-15);
      CHECK(*a.latency <= inst.request.deadline * (1 + 1e-9));
    }
  }
  CHECK(feasible_cases > 20);
}

TEST_CASE("strategies are ordered per request") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto inst = oracle::random_instance(seed);
    for (auto scope : {AccountingScope::fog_cloud(), AccountingScope::all()}) {
      const double full = energy_or_inf(run(inst, Strategy::full_opt, scope));
      const double opt = energy_or_inf(run(inst, Strategy::nearest_opt_freq, scope));
      const double max = energy_or_inf(run(inst, Strategy::nearest_max_freq, scope));
      CAPTURE(seed);
      CHECK(full <= opt * (1 + 1e-12));
      CHECK(opt <= max * (1 + 1e-12));
      CHECK(std::isfinite(opt) == std::isfinite(max));
    }
  }
}

TEST_CASE("infeasible when nothing meets the deadline") {
  auto inst = oracle::two_fog();
  inst.request.deadline = 0.1;
  for (Strategy s : {Strategy::full_opt, Strategy::nearest_opt_freq, Strategy::nearest_max_freq,
                     Strategy::collocated}) {
    const Allocation a = run(inst, s);
    CHECK_FALSE(a.feasible);
    CHECK_FALSE(a.energy.has_value());
    CHECK_FALSE(a.latency.has_value());
  }
}

TEST_CASE("collocated and local strategies") {
  auto inst = oracle::two_fog();
  const Allocation col = run(inst, Strategy::collocated);
  REQUIRE(col.feasible);
  CHECK(col.compute_node == "fog1");
  CHECK(*col.energy == doctest::Approx(7.018).epsilon(5e-4));

  CHECK_THROWS_AS(run(inst, Strategy::local_device), ConfigError);

  Topology t;
  for (const auto& n : inst.topology.nodes()) {
    NodeSpec copy = n;
    if (copy.id == "ap1") copy.collocated.reset();
    if (copy.id == "dev") copy.compute = inst.topology.node("fog1").compute;
    t.add_node(copy);
  }
  t.add_link("dev", "ap1", WirelessCatalogModel{0, 0, 1e15, 0, 0});
  t.add_undirected("ap1", "fog1", WiredHopModel{0, 1e12, 0, 0});
  t.add_undirected("fog1", "fog2", WiredHopModel{1030e-12, 1e9, 1e-3, 0});
  Rng rng(0);
  CHECK_THROWS_AS(allocate(inst.request, t, Strategy::collocated, AccountingScope::all(), rng),
                  ConfigError);
  const Allocation local = allocate(inst.request, t, Strategy::local_device, AccountingScope::all(), rng);
  REQUIRE(local.feasible);
  CHECK(local.compute_node == "dev");
  CHECK(*local.energy == doctest::Approx(7.018).epsilon(5e-4));
  CHECK(local.breakdown.device == *local.energy);
  const Allocation local_fog =
      allocate(inst.request, t, Strategy::local_device, AccountingScope::fog_cloud(), rng);
  CHECK(*local_fog.energy == 0.0);
}

TEST_CASE("nearest picks the lowest-latency fog when the AP is not collocated") {
  auto inst = oracle::two_fog();
  Topology t;
  for (const auto& n : inst.topology.nodes()) {
    NodeSpec copy = n;
    if (copy.id == "ap1") copy.collocated.reset();
    t.add_node(copy);
  }
  t.add_link("dev", "ap1", WirelessCatalogModel{0, 0, 1e15, 0, 0});
  t.add_undirected("ap1", "fog2", WiredHopModel{0, 1e12, 1e-4, 0});
  t.add_undirected("ap1", "fog1", WiredHopModel{0, 1e12, 2e-4, 0});
  Rng rng(0);
  const Allocation a = allocate(inst.request, t, Strategy::nearest_max_freq, AccountingScope::all(), rng);
  CHECK(a.compute_node == "fog2");
}

TEST_CASE("accounting scope splits device and network energy") {
  const auto inst = oracle::two_fog(true);
  const Allocation all = run(inst, Strategy::nearest_max_freq, AccountingScope::all());
  const Allocation fog = run(inst, Strategy::nearest_max_freq, AccountingScope::fog_cloud());
  REQUIRE(all.feasible);
  REQUIRE(fog.feasible);
  CHECK(*all.energy == doctest::Approx(all.breakdown.device + all.breakdown.fog_cloud));
  CHECK(*fog.energy == doctest::Approx(fog.breakdown.fog_cloud));
  CHECK_THROWS_AS(run(inst, Strategy::full_opt, AccountingScope{false, false}), ConfigError);
}

TEST_CASE("result payloads add a return path and downlink") {
  auto inst = oracle::two_fog();
  inst.topology.add_link("ap1", "dev", WirelessCatalogModel{1e-9, 1e-9, 1e9, 0, 0});
  inst.request.result_size = 1e6;
  const Allocation a = run(inst, Strategy::full_opt, AccountingScope::all());
  REQUIRE(a.feasible);
  CHECK_FALSE(a.return_path.empty());
  CHECK(a.breakdown.device == doctest::Approx(2e-3));
  CHECK(*a.energy > 1.521);
}

TEST_CASE("median uses upper middle with failures at infinity") {
  std::vector<Allocation> v{feasible(3), feasible(1), Allocation{}};
  CHECK(median_energy(v) == 3.0);  // sorted 1, 3, inf
  v = {feasible(3), feasible(1), feasible(2), Allocation{}};
  CHECK(median_energy(v) == 2.5);
  v = {feasible(3), Allocation{}, feasible(2), Allocation{}};
  CHECK_FALSE(median_energy(v).has_value());  // exact half: upper middle is a failure
  CHECK(success_rate(v) == 0.5);
  v = {feasible(1), Allocation{}, Allocation{}};
  CHECK_FALSE(median_energy(v).has_value());
  CHECK_FALSE(median_energy(std::vector<Allocation>{}).has_value());
  CHECK(success_rate(std::vector<Allocation>{}) == 0.0);
}

TEST_CASE("median is undefined exactly below half success") {
  for (std::size_t n = 1; n < 30; ++n) {
    for (std::size_t ok = 0; ok <= n; ++ok) {
      std::vector<Allocation> v;
      for (std::size_t i = 0; i < n; ++i) v.push_back(i < ok ? feasible(1.0 + i) : Allocation{});
      const double s = success_rate(v);
      const bool tie = 2 * ok == n;
      CHECK(median_energy(v).has_value() == (s >= 0.5 && !tie));
    }
  }
}

TEST_CASE("cdf saturates at the success fraction") {
  std::vector<Allocation> v{feasible(2), Allocation{}, feasible(1), feasible(2)};
  const auto cdf = energy_cdf(v);
  REQUIRE(cdf.size() == 3);
  CHECK(cdf[0].energy == 1);
  CHECK(cdf[0].fraction == 0.25);
  CHECK(cdf[2].fraction == 0.75);
  for (std::size_t i = 1; i < cdf.size(); ++i) {
    CHECK(cdf[i].energy >= cdf[i - 1].energy);
    CHECK(cdf[i].fraction > cdf[i - 1].fraction);
  }
  CHECK(energy_cdf(std::vector<Allocation>{Allocation{}}).empty());
}

TEST_CASE("savings percent") {
  CHECK(*savings_percent(7.0, 10.0) == doctest::Approx(30));
  CHECK_FALSE(savings_percent(std::nullopt, 10.0).has_value());
  CHECK_FALSE(savings_percent(1.0, std::nullopt).has_value());
  CHECK_FALSE(savings_percent(1.0, 0.0).has_value());
}

TEST_CASE("run_scenario is schedule independent and strategies do not interfere") {
  // Catalog uplinks with MAC delays exercise the random stream.
  Topology t;
  ComputeModel cm;
  cm.f_max = 2e9;
  cm.f_min = 1e8;
  cm.p_static = 3;
  cm.kappa = 2e-27;
  t.add_node({"d", Tier::device, std::nullopt, std::nullopt});
  t.add_node({"f1", Tier::fog, cm, std::nullopt});
  cm.p_static = 1;
  t.add_node({"f2", Tier::fog, cm, std::nullopt});
  t.add_node({"a1", Tier::access_point, std::nullopt, std::string("f1")});
  t.add_node({"a2", Tier::access_point, std::nullopt, std::string("f2")});
  t.add_link("d", "a1", WirelessCatalogModel{1e-8, 1e-8, 5e7, 1e-3, 20e-3});
  t.add_link("d", "a2", WirelessCatalogModel{1e-8, 1e-8, 2e7, 1e-3, 20e-3});
  t.add_undirected("f1", "f2", WiredHopModel{1e-9, 1e9, 2e-3, 0});
  REQUIRE(t.validate().empty());

  RequestDistribution dist;
  dist.size = Distribution::lognormal(2e6, 0.6);
  dist.intensity = Distribution::uniform(20, 200);
  dist.deadline = Distribution::uniform(0.1, 0.6);
  dist.sources = {{"d", 1, std::nullopt}};
  const auto reqs = sample_requests(dist, 400, 3);

  const std::vector<Strategy> three{Strategy::full_opt, Strategy::nearest_opt_freq,
                                    Strategy::nearest_max_freq};
  const std::vector<Strategy> one{Strategy::nearest_max_freq};
  const auto serial = run_scenario(reqs, t, three, AccountingScope::all(), 9, 1);
  const auto threaded = run_scenario(reqs, t, three, AccountingScope::all(), 9, 4);
  const auto alone = run_scenario(reqs, t, one, AccountingScope::all(), 9, 3);
  for (std::size_t s = 0; s < three.size(); ++s) {
    REQUIRE(serial[s].allocations.size() == reqs.size());
    CHECK(serial[s].median == threaded[s].median);
    CHECK(serial[s].total_energy == threaded[s].total_energy);
    for (std::size_t i = 0; i < reqs.size(); ++i) {
      CHECK(serial[s].allocations[i].energy == threaded[s].allocations[i].energy);
      CHECK(serial[s].allocations[i].latency == threaded[s].allocations[i].latency);
    }
  }
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    CHECK(alone[0].allocations[i].latency == serial[2].allocations[i].latency);
  }
  const auto other_seed = run_scenario(reqs, t, one, AccountingScope::all(), 10, 1);
  bool differs = false;
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    differs |= other_seed[0].allocations[i].latency != alone[0].allocations[i].latency;
  }
  CHECK(differs);
  CHECK(serial[0].success_rate >= serial[1].success_rate);
  CHECK(serial[1].success_rate == serial[2].success_rate);
}

TEST_CASE("strategy names round trip") {
  for (Strategy s : {Strategy::full_opt, Strategy::nearest_opt_freq, Strategy::nearest_max_freq,
                     Strategy::collocated, Strategy::local_device}) {
    CHECK(parse_strategy(to_string(s)) == s);
  }
  CHECK_FALSE(parse_strategy("greedy").has_value());
}
