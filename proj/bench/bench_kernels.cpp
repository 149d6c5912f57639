// Serial reference vs OpenMP kernel. Arg(0) = serial, Arg(w) = w workers.
#include <benchmark/benchmark.h>

#include "midlayer/cluster.hpp"
#include "midlayer/counting.hpp"
#include "midlayer/parallel.hpp"
#include "midlayer/polymer.hpp"
#include "midlayer/sampler.hpp"

using namespace midlayer;

namespace {

template <class Serial, class Parallel>
void run(benchmark::State& state, Serial serial, Parallel parallel) {
  const int workers = static_cast<int>(state.range(0));
  if (workers > 0) set_worker_count(workers);
  for (auto _ : state) {
    if (workers == 0) benchmark::DoNotOptimize(serial());
    else benchmark::DoNotOptimize(parallel());
  }
  set_worker_count(0);
}

void BM_EnumeratePolymers(benchmark::State& state) {
  const MidLayerGraph g(4);
  const PolymerParams p{4};
  run(state, [&] { return enumerate_polymers_serial(g, p); }, [&] { return enumerate_polymers(g, p); });
}

void BM_SeriesTerm(benchmark::State& state) {
  const MidLayerGraph g(3);
  const auto model = PolymerModel::build(g, {3}, principal_partitions(4)[0]);
  run(state, [&] { return series_term_serial(model, 3); }, [&] { return series_term(model, 3); });
}

void BM_BruteEnumerate(benchmark::State& state) {
  const MidLayerGraph g(2);
  run(state, [&] { return brute_enumerate_serial(g, 6); }, [&] { return brute_enumerate(g, 6); });
}

void BM_LayerSum(benchmark::State& state) {
  const MidLayerGraph g(3);
  run(state, [&] { return count_colorings_layer_sum_serial(g, 4); },
      [&] { return count_colorings_layer_sum(g, 4); });
}

void BM_Sampler(benchmark::State& state) {
  SamplerConfig c;
  c.sample_count = 5000;
  const MuHatSampler s(c);
  run(state, [&] { return s.run_serial(); }, [&] { return s.run(); });
}

}  // namespace

BENCHMARK(BM_EnumeratePolymers)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeriesTerm)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteEnumerate)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LayerSum)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sampler)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
