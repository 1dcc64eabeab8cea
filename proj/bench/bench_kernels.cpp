// Serial reference vs OpenMP kernels: boundary sampling and random search.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "flatrange/boundary.hpp"
#include "flatrange/search.hpp"

namespace {

flatrange::CompanionSpec bench_spec(int n) {
  flatrange::Xoshiro256 rng(2024);
  flatrange::CVector a(static_cast<std::size_t>(n));
  for (auto& z : a) z = rng.complex_normal(1.0);
  return flatrange::make_spec(a);
}

void BM_SampleBoundarySerial(benchmark::State& state) {
  const auto spec = bench_spec(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(flatrange::sample_boundary_serial(spec, 720));
  state.SetItemsProcessed(state.iterations() * 720);
}

void BM_SampleBoundaryParallel(benchmark::State& state) {
  const auto spec = bench_spec(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(flatrange::sample_boundary(spec, 720));
  state.SetItemsProcessed(state.iterations() * 720);
  state.counters["threads"] = omp_get_max_threads();
}

void BM_SearchSerial(benchmark::State& state) {
  flatrange::SearchConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  cfg.trials = 2000;
  for (auto _ : state) benchmark::DoNotOptimize(flatrange::random_search_serial(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.trials);
}

void BM_SearchParallel(benchmark::State& state) {
  flatrange::SearchConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  cfg.trials = 2000;
  for (auto _ : state) benchmark::DoNotOptimize(flatrange::random_search(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.trials);
  state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_SampleBoundarySerial)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleBoundaryParallel)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchParallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  flatrange::apply_thread_cap();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
