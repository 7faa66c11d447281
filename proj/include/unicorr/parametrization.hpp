#pragma once

#include <span>
#include <vector>

#include "unicorr/measurement.hpp"

namespace unicorr {

// Generalized Gell-Mann matrices of su(N), Tr(G_a G_b) = 2 delta_ab. Order:
// for each pair j < k the symmetric then the antisymmetric generator, then the
// N-1 diagonal ones. For N = 2 this is (sigma_x, sigma_y, sigma_z).
const std::vector<ComplexMatrix>& su_generators(int n);

inline int generator_count(int n) { return n * n - 1; }

// exp(-i/2 sum_k angles_k G_k). Throws BadLength unless angles has N^2-1
// entries.
ComplexMatrix generator_exponential(std::span<const double> angles, int n);

ProjectiveBasis decode_basis(std::span<const double> angles, int n);

// Angles whose decoded basis equals the unitary up to a global phase.
std::vector<double> encode_basis(const ComplexMatrix& unitary);

}  // namespace unicorr
