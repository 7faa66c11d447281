#pragma once

#include <span>
#include <utility>
#include <vector>

#include "unicorr/matrix_core.hpp"

namespace unicorr {

enum class Regime { VonNeumann, Renyi, Unified };

inline constexpr double kRegimeTol = 1e-8;

// Entropic index pair (q, s). q within kRegimeTol of 1 selects the von
// Neumann limit for every s; otherwise s within kRegimeTol of 0 selects the
// Renyi limit.
struct EntropicIndices {
  double q = 1.0;
  double s = 1.0;
  Regime regime = Regime::VonNeumann;

  static EntropicIndices make(double q, double s);
  static EntropicIndices von_neumann() { return make(1.0, 1.0); }
  static EntropicIndices tsallis(double q) { return make(q, 1.0); }
  static EntropicIndices renyi(double q) { return make(q, 0.0); }
};

// expm1(s * log_t) / ((1 - q) s): the unified entropy of a spectrum whose
// q-th power trace has logarithm log_t. Unified regime only.
double unified_from_log_trace(double log_t, const EntropicIndices& idx);

// Eigenvalues at or below this are treated as exact zeros by power_trace;
// for q < 1 round-off of order 1e-17 would otherwise contribute eps^q.
inline constexpr double kSpectralFloor = 1e-14;

// sum_i p_i^q over p_i > kSpectralFloor.
double power_trace(std::span<const double> p, double q);
// -sum_i p_i ln p_i with 0 ln 0 = 0.
double shannon_entropy(std::span<const double> p);

double unified_entropy_spectrum(std::span<const double> p, const EntropicIndices& idx);
double unified_entropy_spectrum(const Spectrum& p, const EntropicIndices& idx);
double unified_entropy(const DensityOperator& rho, const EntropicIndices& idx);

double max_entropy(int n, const EntropicIndices& idx);

// (Tr rho^q)^s, defined as 1 in the von Neumann and Renyi regimes.
double purity_rescale(std::span<const double> p, const EntropicIndices& idx);

// Quantum relative entropy S(rho||sigma). Returns +infinity when the support
// of rho is not contained in that of sigma.
double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

// Entropy ordering check for a majorizing pair (in either direction): the
// majorized vector must have the larger entropy, within 1e-10. Throws
// PreconditionUnmet when neither vector majorizes the other.
bool check_schur_concavity(const Spectrum& p, const Spectrum& q, const EntropicIndices& idx);

// A linear combination sum_k c_k b_k^q of powers of nonnegative bases.
// Closed-form measures are ratios of two such sums; evaluating them through
// this type shares the regime handling with the spectral code path.
struct PowerSum {
  std::vector<std::pair<double, double>> terms;  // (coefficient, base)

  double at(double q) const;
  // d/dq of at(q)
  double derivative(double q) const;
};

// Measure ((num/den)^s - 1) / ((1-q)s) with the von Neumann limit
// -(d/dq) ln(num/den) at q = 1 and the Renyi limit ln(num/den)/(1-q).
double ratio_measure(const PowerSum& num, const PowerSum& den, const EntropicIndices& idx);

}  // namespace unicorr
