#pragma once

#include <string_view>
#include <utility>

#include "unicorr/entropy.hpp"
#include "unicorr/matrix_core.hpp"
#include "unicorr/measurement.hpp"

namespace unicorr {

enum class FamilyKind { Pseudopure, Isotropic, Werner };

std::string_view to_string(FamilyKind kind);
FamilyKind parse_family(std::string_view text);

// One-parameter symmetric families. Pseudopure: (1-p) I/N^{AB} + p |psi><psi|
// with p in [0,1]. Isotropic: y in [1/N^2, 1]. Werner: x in [-1, 1].
struct FamilySpec {
  FamilyKind kind = FamilyKind::Pseudopure;
  int na = 2, nb = 2;
  double parameter = 0.0;
  ComplexVector psi;  // pseudopure only

  static FamilySpec pseudopure(ComplexVector psi, int na, int nb, double p);
  // pseudopure with the maximally entangled N x N vector
  static FamilySpec pseudopure_max_entangled(int n, double p);
  static FamilySpec isotropic(int n, double y);
  static FamilySpec werner(int n, double x);

  void validate() const;
};

ComplexVector max_entangled(int n);
// Swap operator F = sum_ij |ij><ji| on C^N (x) C^N.
ComplexMatrix swap_operator(int n);

DensityOperator build(const FamilySpec& spec);

// Closed form for pseudopure states; the same for every side since the
// Schmidt-basis measurement is optimal for all of them.
double pseudopure_closed_form(const FamilySpec& spec, Side side, const EntropicIndices& idx);

// Closed form of the standard-basis measure on isotropic states.
double isotropic_closed_form(int n, double y, const EntropicIndices& idx);

// Werner measure evaluated from the exact spectra before and after a
// standard-basis bilocal measurement.
double werner_spectrum_form(int n, double x, const EntropicIndices& idx);

// Literal evaluation of the published Werner expression. Kept for comparison
// reports only; it disagrees with werner_spectrum_form (for instance at
// N = 2, x = -1 in the von Neumann limit).
double werner_printed_form(int n, double x, const EntropicIndices& idx);

struct IsotropicSpecializations {
  double tsallis = 0.0;  // pseudopure closed form at s = 1
  double renyi = 0.0;    // published Renyi expression
};
// Maximally entangled pseudopure parametrization p.
IsotropicSpecializations isotropic_specializations(int n, double p, double q);

// Literal evaluation of the published Tsallis specialization, which omits
// the purity rescaling. Comparison only.
double isotropic_tsallis_printed(int n, double p, double q);

// Isotropic y <-> maximally entangled pseudopure p = (N^2 y - 1)/(N^2 - 1).
double isotropic_y_to_p(int n, double y);

}  // namespace unicorr
