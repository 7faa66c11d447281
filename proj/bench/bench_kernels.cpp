#include <benchmark/benchmark.h>

#include <cmath>
#include <span>
#include <vector>

#include "unicorr/correlations.hpp"
#include "unicorr/experiments.hpp"
#include "unicorr/random.hpp"

using namespace unicorr;

namespace {

DensityOperator sample_state(const Dims& dims) {
  Rng rng = task_rng(7, 0);
  return random_density(dims, rng);
}

void BM_contractivity_table(benchmark::State& st, bool parallel) {
  const auto states = fig1_states(static_cast<int>(st.range(0)), kDefaultSeed);
  const std::vector<EntropicIndices> idx{EntropicIndices::tsallis(0.5), EntropicIndices::tsallis(2.0),
                                         EntropicIndices::renyi(3.0)};
  for (auto _ : st) {
    auto t = parallel ? kernels::contractivity_table(states, idx, 200, 1)
                      : kernels::ref::contractivity_table(states, idx, 200, 1);
    benchmark::DoNotOptimize(t.data());
  }
}

void BM_grid_argmin(benchmark::State& st, bool parallel) {
  const DensityOperator rho = sample_state(Dims{2, 2});
  const EntropicIndices idx = EntropicIndices::tsallis(2.0);
  const Spectrum before = spectrum(rho);
  const double log_before = log_trace_or_entropy(before.values, idx);
  const std::int64_t n = st.range(0);
  auto f = [&](std::int64_t i) {
    const double theta = M_PI * static_cast<double>(i) / static_cast<double>(n);
    ComplexMatrix u(2, 2);
    u << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
    thread_local std::vector<double> after;
    measured_spectrum_into(rho.matrix(), 2, 2, Side::A, u, u, after);
    return disturbance_value(log_before, after, idx);
  };
  for (auto _ : st) {
    auto r = parallel ? kernels::grid_argmin(n, f) : kernels::ref::grid_argmin(n, f);
    benchmark::DoNotOptimize(r);
  }
}

void BM_measure(benchmark::State& st, bool parallel) {
  const DensityOperator rho = sample_state(Dims{2, 3});
  CorrelationOptions opts;
  opts.restarts = static_cast<int>(st.range(0));
  opts.execution = parallel ? kernels::Execution::Parallel : kernels::Execution::Serial;
  for (auto _ : st) {
    auto r = measure_correlations(rho, Side::AB, EntropicIndices::tsallis(2.0), opts);
    benchmark::DoNotOptimize(r.value);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_contractivity_table, serial, false)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_contractivity_table, omp, true)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_grid_argmin, serial, false)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_grid_argmin, omp, true)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_measure, serial, false)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_measure, omp, true)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
