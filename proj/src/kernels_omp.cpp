#include <exception>
#include <limits>
#include <mutex>

#include <omp.h>

#include "unicorr/kernels.hpp"

namespace unicorr::kernels {

namespace {

// Exceptions may not leave an OpenMP region; the first one is kept and
// rethrown after the loop.
class FirstError {
 public:
  template <typename Fn>
  void guard(Fn&& fn) {
    try {
      fn();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

}  // namespace

ArgMin grid_argmin(std::int64_t count, const std::function<double(std::int64_t)>& f) {
  ArgMin best{-1, std::numeric_limits<double>::infinity()};
  FirstError error;
#pragma omp parallel
  {
    ArgMin local{-1, std::numeric_limits<double>::infinity()};
    // static schedule: each thread scans increasing indices
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < count; ++i) {
      error.guard([&] {
        const double v = f(i);
        if (v < local.value) local = {i, v};
      });
    }
#pragma omp critical
    {
      if (local.index >= 0 &&
          (local.value < best.value ||
           (local.value == best.value && local.index < best.index))) {
        best = local;
      }
    }
  }
  error.rethrow();
  return best;
}

std::vector<SimplexResult> multistart(int restarts,
                                      const std::function<SimplexResult(int)>& run) {
  std::vector<SimplexResult> out(restarts);
  FirstError error;
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < restarts; ++r) error.guard([&] { out[r] = run(r); });
  error.rethrow();
  return out;
}

void for_each_task(std::int64_t count, const std::function<void(std::int64_t)>& task) {
  FirstError error;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) error.guard([&] { task(i); });
  error.rethrow();
}

std::vector<std::vector<double>> contractivity_table(std::span<const DensityOperator> states,
                                                     std::span<const EntropicIndices> indices,
                                                     int trials, std::uint64_t seed) {
  const auto n = static_cast<std::int64_t>(states.size());
  std::vector<std::vector<double>> table(states.size());
  FirstError error;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t s = 0; s < n; ++s) {
    error.guard([&] {
      table[s] = contractivity_row(states[s], indices, trials, seed, static_cast<std::uint64_t>(s));
    });
  }
  error.rethrow();
  return table;
}

}  // namespace unicorr::kernels
