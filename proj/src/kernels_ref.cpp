#include <cmath>
#include <limits>

#include "unicorr/kernels.hpp"
#include "unicorr/measurement.hpp"

namespace unicorr::kernels {

std::vector<double> contractivity_row(const DensityOperator& rho,
                                      std::span<const EntropicIndices> indices, int trials,
                                      std::uint64_t seed, std::uint64_t state_index) {
  const int na = rho.dims().at(0), nb = rho.dims().at(1);
  const Spectrum before = spectrum(rho);
  std::vector<double> row(indices.size(), std::numeric_limits<double>::infinity());
  std::vector<double> log_before(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    log_before[k] = log_trace_or_entropy(before.values, indices[k]);
  }

  Rng rng = task_rng(seed, state_index);
  for (int t = 0; t < trials; ++t) {
    ProjectiveBasis a{haar_unitary(na, rng)};
    ProjectiveBasis b{haar_unitary(nb, rng)};
    const std::vector<double> s_a = measured_spectrum(rho, LocalMeasurement::on_a(a));
    const std::vector<double> s_b = measured_spectrum(rho, LocalMeasurement::on_b(b));
    const std::vector<double> s_ab =
        measured_spectrum(rho, LocalMeasurement::on_ab(std::move(a), std::move(b)));
    for (std::size_t k = 0; k < indices.size(); ++k) {
      const EntropicIndices& idx = indices[k];
      const double d_a = disturbance_value(log_before[k], s_a, idx);
      const double log_b = log_trace_or_entropy(s_b, idx);
      const double d_a_after_b = disturbance_value(log_b, s_ab, idx);
      const double ratio_b =
          idx.regime == Regime::Unified ? std::exp(idx.s * (log_b - log_before[k])) : 1.0;
      row[k] = std::min(row[k], d_a - ratio_b * d_a_after_b);
    }
  }
  return row;
}

namespace ref {

ArgMin grid_argmin(std::int64_t count, const std::function<double(std::int64_t)>& f) {
  ArgMin best{-1, std::numeric_limits<double>::infinity()};
  for (std::int64_t i = 0; i < count; ++i) {
    const double v = f(i);
    if (v < best.value) best = {i, v};
  }
  return best;
}

std::vector<SimplexResult> multistart(int restarts,
                                      const std::function<SimplexResult(int)>& run) {
  std::vector<SimplexResult> out(restarts);
  for (int r = 0; r < restarts; ++r) out[r] = run(r);
  return out;
}

void for_each_task(std::int64_t count, const std::function<void(std::int64_t)>& task) {
  for (std::int64_t i = 0; i < count; ++i) task(i);
}

std::vector<std::vector<double>> contractivity_table(std::span<const DensityOperator> states,
                                                     std::span<const EntropicIndices> indices,
                                                     int trials, std::uint64_t seed) {
  std::vector<std::vector<double>> table(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) {
    table[s] = contractivity_row(states[s], indices, trials, seed, s);
  }
  return table;
}

}  // namespace ref
}  // namespace unicorr::kernels
