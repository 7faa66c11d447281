#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "unicorr/entropy.hpp"
#include "unicorr/matrix_core.hpp"

namespace unicorr {

// Orthonormal basis {|i>} given by the columns of a unitary; defines the
// rank-one projectors P_i = |i><i|.
struct ProjectiveBasis {
  Unitary unitary;

  static ProjectiveBasis checked(ComplexMatrix columns);
  static ProjectiveBasis computational(int n);
  int dim() const noexcept { return unitary.dim(); }
};

enum class Side { A, B, AB };

std::string_view to_string(Side side);
Side parse_side(std::string_view text);

// Local rank-one projective measurement on one or both halves of a bipartite
// state. Side A carries basis_a, side B carries basis_b, side AB both.
struct LocalMeasurement {
  Side side = Side::A;
  std::optional<ProjectiveBasis> basis_a;
  std::optional<ProjectiveBasis> basis_b;

  static LocalMeasurement on_a(ProjectiveBasis a);
  static LocalMeasurement on_b(ProjectiveBasis b);
  static LocalMeasurement on_ab(ProjectiveBasis a, ProjectiveBasis b);

  bool measures_a() const noexcept { return side != Side::B; }
  bool measures_b() const noexcept { return side != Side::A; }
};

struct ConditionalDecomposition {
  // p_i (side A), p_j (side B), or p_ij flattened row-major as i * N^B + j
  // (side AB).
  std::vector<double> probabilities;
  // rho^{B|i} or rho^{A|j}; empty for side AB and for outcomes with
  // probability below 1e-12.
  std::vector<std::optional<DensityOperator>> conditionals;
};

struct DisturbanceReport {
  double entropy_before = 0.0;
  double entropy_after = 0.0;
  double purity_ratio = 1.0;  // ((Tr Pi(rho)^q) / (Tr rho^q))^s
  double rescale = 1.0;       // (Tr rho^q)^s, 1 in the limit regimes
  double disturbance = 0.0;
};

inline constexpr double kOutcomeTol = 1e-12;

// Global measurement: Pi(rho) = sum_i P_i rho P_i.
DensityOperator dephase(const DensityOperator& rho, const ProjectiveBasis& basis);

// Pi^A, Pi^B or Pi^{AB} applied to a two-block state.
DensityOperator apply_local(const DensityOperator& rho, const LocalMeasurement& m);

// Decreasing eigenvalues of apply_local(rho, m), computed blockwise.
std::vector<double> measured_spectrum(const DensityOperator& rho, const LocalMeasurement& m);

// Same on raw data: rho on N^A x N^B, bases as unitary matrices (the one on an
// unmeasured side is ignored). No validation; `out` is overwritten.
void measured_spectrum_into(const ComplexMatrix& rho, int na, int nb, Side side,
                            const ComplexMatrix& ua, const ComplexMatrix& ub,
                            std::vector<double>& out);

ConditionalDecomposition conditional_decomposition(const DensityOperator& rho,
                                                   const LocalMeasurement& m);

double purity_ratio(const DensityOperator& rho, const LocalMeasurement& m,
                    const EntropicIndices& idx);

DisturbanceReport disturbance(const DensityOperator& rho, const LocalMeasurement& m,
                              const EntropicIndices& idx);
DisturbanceReport disturbance(const DensityOperator& rho, const ProjectiveBasis& global,
                              const EntropicIndices& idx);

// Disturbance between the spectra of a state and of its measured image.
DisturbanceReport disturbance_from_spectra(std::span<const double> before,
                                           std::span<const double> after,
                                           const EntropicIndices& idx);

// Disturbance value only, in the same ratio form as disturbance_from_spectra.
// `before_log_trace` is ln Tr rho^q (Unified/Renyi) or S(rho) (von Neumann).
double disturbance_value(double before_log_trace, std::span<const double> after,
                         const EntropicIndices& idx);
double log_trace_or_entropy(std::span<const double> p, const EntropicIndices& idx);

}  // namespace unicorr
