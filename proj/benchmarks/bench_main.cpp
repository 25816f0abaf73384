#include <benchmark/benchmark.h>

#include "rdslab/bootstrap.hpp"
#include "rdslab/estimate.hpp"
#include "rdslab/netgen.hpp"
#include "rdslab/network.hpp"
#include "rdslab/rds.hpp"

using namespace rdslab;

namespace {

Network population(std::size_t n) {
  KoskkParams p;
  p.n = n;
  p.p_delta = 0.04;
  p.steps = KoskkParams::scaled_steps(n);
  Rng gen = StreamKey(1).stream(StreamTag::generation);
  Rng lab = StreamKey(1).stream(StreamTag::grouping);
  return assign_groups(koskk_generate(p, gen), 0.3, lab);
}

const Network& shared_population() {
  static const Network net = population(5000);
  return net;
}

void BM_KoskkGenerate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(population(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_KoskkGenerate)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_TuneHomophily(benchmark::State& state) {
  const Network& net = shared_population();
  TuneTargets t;
  t.target_h = 0.3;
  t.tolerance = 0.005;
  std::uint64_t i = 0;
  for (auto _ : state) {
    Rng rng = StreamKey(2).child(i++).stream(StreamTag::tuning);
    benchmark::DoNotOptimize(tune_homophily(net, t, rng));
  }
}
BENCHMARK(BM_TuneHomophily)->Unit(benchmark::kMillisecond);

void BM_RunRds(benchmark::State& state) {
  const Network& net = shared_population();
  RdsConfig cfg;
  cfg.target_size = static_cast<std::size_t>(state.range(0));
  cfg.p_diff = 1.0;
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_rds(net, cfg, StreamKey(3).child(i++)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunRds)->Arg(500)->Arg(2000);

void BM_EstimateAll(benchmark::State& state) {
  RdsConfig cfg;
  cfg.target_size = 500;
  const RdsSample s = run_rds(shared_population(), cfg, StreamKey(4));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_all(s));
}
BENCHMARK(BM_EstimateAll);

void BM_Bootstrap(benchmark::State& state) {
  RdsConfig cfg;
  cfg.target_size = 500;
  const RdsSample s = run_rds(shared_population(), cfg, StreamKey(5));
  const auto method = static_cast<BootstrapMethod>(state.range(0));
  state.SetLabel(std::string(to_string(method)));
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_ci(s, {method, 1000, 0.95}, StreamKey(6)));
}
BENCHMARK(BM_Bootstrap)
    ->Arg(static_cast<int>(BootstrapMethod::origin))
    ->Arg(static_cast<int>(BootstrapMethod::ego1))
    ->Arg(static_cast<int>(BootstrapMethod::ego2))
    ->Unit(benchmark::kMillisecond);

void BM_ComputeStats(benchmark::State& state) {
  const Network& net = shared_population();
  for (auto _ : state) benchmark::DoNotOptimize(compute_stats(net));
}
BENCHMARK(BM_ComputeStats)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
