// Serial reference vs OpenMP kernels.
//
//   ./build/bench/bench_kernels --benchmark_filter=Series

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "coulomb/kernels.hpp"

namespace {

using namespace coulomb;

std::vector<double> angle_grid(int n) {
  std::vector<double> thetas(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    thetas[static_cast<std::size_t>(i)] = std::numbers::pi / 6.0 + (5.0 * std::numbers::pi / 6.0) * i / (n - 1);
  }
  return thetas;
}

std::vector<double> x_grid(int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (n - 1);
  return xs;
}

void BM_SeriesSweepSerial(benchmark::State& state) {
  const auto thetas = angle_grid(static_cast<int>(state.range(0)));
  const PhysicalParams p(1.0, 1.0);
  const auto cfg = SummationConfig::defaults();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::series_amplitude_sweep_serial(thetas, p, cfg, false));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SeriesSweepOmp(benchmark::State& state) {
  const auto thetas = angle_grid(static_cast<int>(state.range(0)));
  const PhysicalParams p(1.0, 1.0);
  const auto cfg = SummationConfig::defaults();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::series_amplitude_sweep_omp(thetas, p, cfg, false));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ClosedSweepSerial(benchmark::State& state) {
  const auto thetas = angle_grid(static_cast<int>(state.range(0)));
  const PhysicalParams p(1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::closed_amplitude_sweep_serial(thetas, p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ClosedSweepOmp(benchmark::State& state) {
  const auto thetas = angle_grid(static_cast<int>(state.range(0)));
  const PhysicalParams p(1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::closed_amplitude_sweep_omp(thetas, p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DeltaKernelSerial(benchmark::State& state) {
  const auto xs = x_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::delta_kernel_grid_serial(xs, 0.0125, 1472));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DeltaKernelOmp(benchmark::State& state) {
  const auto xs = x_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::delta_kernel_grid_omp(xs, 0.0125, 1472));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DampedSumsSerial(benchmark::State& state) {
  const std::vector<Complex> terms(static_cast<std::size_t>(state.range(0)), Complex{1.0, 0.5});
  const std::vector<double> eps = {0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::damped_sums_serial(terms, eps, Damping::exponential));
}

void BM_DampedSumsOmp(benchmark::State& state) {
  const std::vector<Complex> terms(static_cast<std::size_t>(state.range(0)), Complex{1.0, 0.5});
  const std::vector<double> eps = {0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::damped_sums_omp(terms, eps, Damping::exponential));
}

}  // namespace

BENCHMARK(BM_SeriesSweepSerial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeriesSweepOmp)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClosedSweepSerial)->Arg(4096)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ClosedSweepOmp)->Arg(4096)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_DeltaKernelSerial)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DeltaKernelOmp)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DampedSumsSerial)->Arg(5888)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DampedSumsOmp)->Arg(5888)->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();
