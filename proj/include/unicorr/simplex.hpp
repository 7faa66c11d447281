#pragma once

#include <functional>
#include <span>
#include <vector>

namespace unicorr {

struct SimplexOptions {
  double initial_step = 0.4;
  // Converged once the spread of values over the simplex is at most `tol`.
  double tol = 1e-10;
  // Evaluation-step budget shared by all cycles.
  int max_iter = 2000;
  // After convergence the simplex is rebuilt around the best vertex this many
  // times; a cycle that improves by less than `tol` ends the run early.
  int polish_cycles = 2;
  double polish_step = 0.05;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

// Nelder-Mead downhill simplex (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2).
SimplexResult nelder_mead(const Objective& f, std::vector<double> x0, const SimplexOptions& opts);

}  // namespace unicorr
