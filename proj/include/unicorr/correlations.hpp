#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "unicorr/kernels.hpp"
#include "unicorr/measurement.hpp"

namespace unicorr {

// Generator angles of the measured side(s); see decode_basis.
struct MeasurementParams {
  Side side = Side::A;
  std::vector<double> angles_a;
  std::vector<double> angles_b;

  LocalMeasurement decode(int na, int nb) const;
};

struct CorrelationOptions {
  int restarts = 32;
  std::uint64_t seed = 0x5eedULL;
  double tol = 1e-10;
  int max_iter = 2000;
  // One block-coordinate pass (A with B fixed, then B with A fixed) after the
  // joint side-AB search.
  bool alternating_refinement = true;
  kernels::Execution execution = kernels::Execution::Parallel;
  // Additional deterministic anchor bases (a, b); entries for an unmeasured
  // side are ignored.
  std::vector<std::pair<ComplexMatrix, ComplexMatrix>> warm_starts;
};

struct CorrelationResult {
  double value = 0.0;
  MeasurementParams argmin;
  LocalMeasurement measurement;  // decoded argmin
  int restarts_used = 0;
  int iterations = 0;
  double spread = 0.0;  // max - min over converged restarts
  bool converged = false;
};

// Minimum of disturbance(rho, m, idx) over local measurements m on `side`.
// Restart 0 is anchored at the eigenbases of the reduced states, the remaining
// ones at Haar-random bases drawn from task_rng(seed, restart).
CorrelationResult measure_correlations(const DensityOperator& rho, Side side,
                                       const EntropicIndices& idx,
                                       const CorrelationOptions& opts = {});

struct GridResolution {
  int theta = 64;
  int phi = 128;
  int refinements = 1;
};

// Brute-force minimum over Bloch-angle grids for a two-qubit state. An upper
// bound on the true minimum.
double grid_oracle_qubit(const DensityOperator& rho, Side side, const EntropicIndices& idx,
                         const GridResolution& res = {},
                         kernels::Execution execution = kernels::Execution::Parallel);

// max_L (S(rho^L) - S(rho)) / (Tr rho^q)^s; negative for separable states.
double entanglement_lower_bound(const DensityOperator& rho, const EntropicIndices& idx);

struct BilocalResiduals {
  double a_first = 0.0;  // |D^AB - (D^A + P_A D^B(Pi^A rho))|
  double b_first = 0.0;  // |D^AB - (D^B + P_B D^A(Pi^B rho))|
};

BilocalResiduals bilocal_decomposition_check(const DensityOperator& rho,
                                             const ProjectiveBasis& basis_a,
                                             const ProjectiveBasis& basis_b,
                                             const EntropicIndices& idx);

// P_{Pi^first} D^{Pi^second}(Pi^first(rho)), the sequential term of the
// bilocal decomposition.
double sequential_term(const DensityOperator& rho, const LocalMeasurement& first,
                       const LocalMeasurement& second, const EntropicIndices& idx);

struct TriangleReport {
  double m_a = 0.0, m_b = 0.0, m_ab = 0.0;
  double delta0 = 0.0, delta1 = 0.0;
  bool triangle_holds = false;     // m_a + m_b >= m_ab - 1e-8
  bool dadb_holds = false;         // m_ab + delta0 >= m_a + m_b >= m_ab + delta1 - 1e-8
  bool ordering_holds = false;     // m_ab >= max(m_a, m_b) - 1e-8
  bool lower_bound_holds = false;  // sandwich lower bound with the Pi_0 data
  bool upper_bound_holds = false;  // sandwich upper bound with the Pi_1 data
  LocalMeasurement pi0;            // side-AB argmin
  LocalMeasurement pi1;            // unilocal argmins combined
};

inline constexpr double kInequalityTol = 1e-8;

TriangleReport triangle_analysis(const DensityOperator& rho, const EntropicIndices& idx,
                                 const CorrelationOptions& opts = {});

// Minimum over `trials` Haar-random pairs (Pi^A, Pi^B) of
// D^{Pi^A}(rho) - P_{Pi^B} D^{Pi^A}(Pi^B(rho)). Negative values certify a
// violation of local contractivity.
double contractivity_probe(const DensityOperator& rho, const EntropicIndices& idx, int trials,
                           std::uint64_t seed);

}  // namespace unicorr
