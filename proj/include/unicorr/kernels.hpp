#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "unicorr/entropy.hpp"
#include "unicorr/matrix_core.hpp"
#include "unicorr/simplex.hpp"

// Data-parallel kernels. The default namespace holds the OpenMP versions;
// unicorr::kernels::ref holds serial references with identical results, kept
// for testing and benchmarking. Every task owns its generator and output slot,
// so both versions agree bit for bit.
namespace unicorr::kernels {

enum class Execution { Parallel, Serial };

struct ArgMin {
  std::int64_t index = -1;
  double value = 0.0;
};

// Smallest f(i) over i in [0, count); ties resolve to the lowest index.
ArgMin grid_argmin(std::int64_t count, const std::function<double(std::int64_t)>& f);

// run(r) for r in [0, restarts), collected in restart order.
std::vector<SimplexResult> multistart(int restarts,
                                      const std::function<SimplexResult(int)>& run);

// task(i) for i in [0, count); tasks must write disjoint outputs.
void for_each_task(std::int64_t count, const std::function<void(std::int64_t)>& task);

// Row s, column k: minimum over `trials` random local measurement pairs
// (Pi^A, Pi^B) of D^{Pi^A}(rho_s) - P_{Pi^B} D^{Pi^A}(Pi^B(rho_s)) at index
// set indices[k]. The pairs for state s come from task_rng(seed, s), shared
// across index sets.
std::vector<std::vector<double>> contractivity_table(std::span<const DensityOperator> states,
                                                     std::span<const EntropicIndices> indices,
                                                     int trials, std::uint64_t seed);

namespace ref {

ArgMin grid_argmin(std::int64_t count, const std::function<double(std::int64_t)>& f);
std::vector<SimplexResult> multistart(int restarts,
                                      const std::function<SimplexResult(int)>& run);
void for_each_task(std::int64_t count, const std::function<void(std::int64_t)>& task);
std::vector<std::vector<double>> contractivity_table(std::span<const DensityOperator> states,
                                                     std::span<const EntropicIndices> indices,
                                                     int trials, std::uint64_t seed);

}  // namespace ref

// Per-state body shared by both contractivity_table versions.
std::vector<double> contractivity_row(const DensityOperator& rho,
                                      std::span<const EntropicIndices> indices, int trials,
                                      std::uint64_t seed, std::uint64_t state_index);

}  // namespace unicorr::kernels
