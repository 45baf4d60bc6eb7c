// Serial reference vs OpenMP kernels.
//
//   ./build/bench/bench_kernels --benchmark_filter=Dense

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "wsum/kernels.hpp"
#include "wsum/random_instances.hpp"

namespace {

using namespace wsum;

std::vector<double> random_masses(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  return v;
}

// Keys of a two-weight measure packed with stride `stride` for the second coordinate.
kernels::KeyedMasses random_keyed(std::size_t n, std::int64_t stride, std::uint64_t seed) {
  Rng rng(seed);
  kernels::KeyedMasses k;
  std::int64_t key = 0;
  for (std::size_t i = 0; i < n; ++i) {
    key += 1 + rng.integer(0, stride / 4);
    k.keys.push_back(key);
    k.masses.push_back(rng.uniform());
  }
  return k;
}

void BM_DenseSerial(benchmark::State& state) {
  const auto a = random_masses(static_cast<std::size_t>(state.range(0)), 1);
  const auto b = random_masses(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::convolve_serial(a, b));
}

void BM_DenseParallel(benchmark::State& state) {
  const auto a = random_masses(static_cast<std::size_t>(state.range(0)), 1);
  const auto b = random_masses(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::convolve_parallel(a, b));
}

void BM_KeyedSerial(benchmark::State& state) {
  const auto a = random_keyed(static_cast<std::size_t>(state.range(0)), 64, 3);
  const auto b = random_keyed(static_cast<std::size_t>(state.range(0)), 64, 4);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::keyed_convolve_serial(a, b));
}

void BM_KeyedParallel(benchmark::State& state) {
  const auto a = random_keyed(static_cast<std::size_t>(state.range(0)), 64, 3);
  const auto b = random_keyed(static_cast<std::size_t>(state.range(0)), 64, 4);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::keyed_convolve_parallel(a, b));
}

void BM_KeyedDense(benchmark::State& state) {
  const auto a = random_keyed(static_cast<std::size_t>(state.range(0)), 64, 3);
  const auto b = random_keyed(static_cast<std::size_t>(state.range(0)), 64, 4);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::keyed_convolve_dense(a, b));
}

}  // namespace

BENCHMARK(BM_DenseSerial)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DenseParallel)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_KeyedSerial)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_KeyedParallel)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_KeyedDense)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
