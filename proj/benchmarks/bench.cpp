#include <benchmark/benchmark.h>

#include "fog2c/allocator.hpp"
#include "fog2c/aoi.hpp"
#include "fog2c/models.hpp"
#include "oracles.hpp"

using namespace fog2c;

static void BM_OptimalFrequency(benchmark::State& state) {
  ComputeModel m;
  m.f_max = 3e9;
  m.f_min = 1e8;
  m.p_static = 10;
  m.kappa = 1e-27;
  double budget = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_frequency(m, 8e8, budget));
    budget = budget > 0.9 ? 0.5 : budget + 1e-3;
  }
}
BENCHMARK(BM_OptimalFrequency);

static void BM_OptimizeFull(benchmark::State& state) {
  oracle::InstanceParams p;
  p.max_compute = static_cast<std::size_t>(state.range(0));
  const auto inst = oracle::random_instance(11, p);
  Rng rng(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_full(inst.request, inst.topology, AccountingScope::all(), rng));
  }
}
BENCHMARK(BM_OptimizeFull)->Arg(2)->Arg(5)->Arg(10);

static void BM_Simulate(benchmark::State& state) {
  AoiScenario s;
  s.rate = static_cast<double>(state.range(0));
  s.slot_duration = 1e-3;
  s.size = 1e4;
  s.intensity = 500;
  s.wireless.bandwidth = 1e6;
  s.wireless.noise_density = 1.380649e-23 * 290;
  s.wireless.path_loss_db = 90;
  s.wireless.pa_efficiency = 0.5;
  s.wireless.rate_max = 2e7;
  s.compute.f_max = 3e9;
  s.compute.f_min = 2e8;
  s.compute.ops_per_cycle = 4;
  s.compute.p_static = 2;
  s.compute.kappa = 1e-27;
  s.horizon = 5;
  s.warmup = 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(s));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.rate * s.horizon));
}
BENCHMARK(BM_Simulate)->Arg(100)->Arg(1000)->Arg(2000);
BENCHMARK_MAIN();
