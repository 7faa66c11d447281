#include "unicorr/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace unicorr {

namespace {

struct Cycle {
  double value;
  int iterations;
  bool converged;
};

// One Nelder-Mead run from a fresh simplex around `best`; updates it in place.
Cycle run_cycle(const Objective& f, std::vector<double>& best, double& best_value, double step,
                double tol, int budget) {
  const std::size_t n = best.size();
  std::vector<std::vector<double>> pts(n + 1, best);
  std::vector<double> vals(n + 1);
  vals[0] = best_value;
  for (std::size_t i = 0; i < n; ++i) {
    pts[i + 1][i] += step;
    vals[i + 1] = f(pts[i + 1]);
  }

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto along = [&](std::vector<double>& out, double t) {
    const auto& worst = pts[order[n]];
    for (std::size_t k = 0; k < n; ++k) out[k] = centroid[k] + t * (worst[k] - centroid[k]);
  };

  int it = 0;
  bool converged = false;
  while (true) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    if (vals[order[n]] - vals[order[0]] <= tol) {
      converged = true;
      break;
    }
    if (it >= budget) break;
    ++it;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[order[j]][k];
    for (double& c : centroid) c /= static_cast<double>(n);

    const std::size_t w = order[n];
    along(trial, -1.0);
    const double fr = f(trial);
    if (fr < vals[order[0]]) {
      along(trial2, -2.0);
      const double fe = f(trial2);
      if (fe < fr) {
        pts[w] = trial2;
        vals[w] = fe;
      } else {
        pts[w] = trial;
        vals[w] = fr;
      }
      continue;
    }
    if (fr < vals[order[n - 1]]) {
      pts[w] = trial;
      vals[w] = fr;
      continue;
    }
    // contraction, outside when the reflection beat the worst vertex
    along(trial2, fr < vals[w] ? -0.5 : 0.5);
    const double fc = f(trial2);
    if (fc < std::min(fr, vals[w])) {
      pts[w] = trial2;
      vals[w] = fc;
      continue;
    }
    const auto& b = pts[order[0]];
    for (std::size_t j = 1; j <= n; ++j) {
      auto& p = pts[order[j]];
      for (std::size_t k = 0; k < n; ++k) p[k] = b[k] + 0.5 * (p[k] - b[k]);
      vals[order[j]] = f(p);
    }
  }
  const std::size_t arg = static_cast<std::size_t>(
      std::min_element(vals.begin(), vals.end()) - vals.begin());
  best = pts[arg];
  best_value = vals[arg];
  return Cycle{best_value, it, converged};
}

}  // namespace

SimplexResult nelder_mead(const Objective& f, std::vector<double> x0, const SimplexOptions& opts) {
  SimplexResult res;
  res.value = f(x0);
  res.x = std::move(x0);
  if (res.x.empty()) {
    res.converged = true;
    return res;
  }

  Cycle c = run_cycle(f, res.x, res.value, opts.initial_step, opts.tol, opts.max_iter);
  res.iterations = c.iterations;
  res.converged = c.converged;
  for (int cycle = 0; cycle < opts.polish_cycles && res.converged; ++cycle) {
    const double before = res.value;
    c = run_cycle(f, res.x, res.value, opts.polish_step, opts.tol,
                  opts.max_iter - res.iterations);
    res.iterations += c.iterations;
    res.converged = c.converged;
    if (before - res.value <= opts.tol) break;
  }
  return res;
}

}  // namespace unicorr
