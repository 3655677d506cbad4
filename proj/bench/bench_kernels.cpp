// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "mdlab/kernels.hpp"
#include "mdlab/stats.hpp"

namespace {

using namespace mdlab;

void BM_TabulateSerial(benchmark::State& state) {
  const unsigned ell = static_cast<unsigned>(state.range(0));
  const BlockMap f(CompressionSpec::toy(1, ell), Block::zero(32));
  std::vector<std::uint32_t> out(std::size_t{1} << ell);
  for (auto _ : state) {
    kernels::tabulate_serial(f, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(out.size()));
}

void BM_TabulateOmp(benchmark::State& state) {
  const unsigned ell = static_cast<unsigned>(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  const BlockMap f(CompressionSpec::toy(1, ell), Block::zero(32));
  std::vector<std::uint32_t> out(std::size_t{1} << ell);
  for (auto _ : state) {
    kernels::tabulate_omp(f, out, threads);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(out.size()));
}

void BM_NodeStats(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_node_stats(16, 200, 1, MappingMode::Toy, threads));
  }
}

void BM_GraphStats(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_graph_stats(10, 50, 1, MappingMode::Toy, threads));
  }
}

}  // namespace

BENCHMARK(BM_TabulateSerial)->Arg(16)->Arg(20);
BENCHMARK(BM_TabulateOmp)->Args({16, 2})->Args({16, 4})->Args({20, 2})->Args({20, 4})->UseRealTime();
BENCHMARK(BM_NodeStats)->Arg(1)->Arg(4)->UseRealTime();
BENCHMARK(BM_GraphStats)->Arg(1)->Arg(4)->UseRealTime();

BENCHMARK_MAIN();
