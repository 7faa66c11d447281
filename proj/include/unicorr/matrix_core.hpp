#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "unicorr/error.hpp"
#include "unicorr/random.hpp"

namespace unicorr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<int>;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kSchmidtTol = 1e-12;
inline constexpr double kMajorizationTol = 1e-10;

int dims_product(std::span<const int> dims);

// Trace-one positive semidefinite Hermitian matrix together with the
// subsystem dimensions of its tensor-product structure. Obtain one through
// make_density or one of the library operations; they all preserve the
// invariants.
class DensityOperator {
 public:
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const Dims& dims() const noexcept { return dims_; }
  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
  int subsystem_count() const noexcept { return static_cast<int>(dims_.size()); }

  // Wraps a matrix already known to satisfy the invariants (for example the
  // output of a trace-preserving positive map applied to a valid state). Only
  // the Hermitian part is kept; no spectral check is performed.
  static DensityOperator adopt(ComplexMatrix matrix, Dims dims);

 private:
  DensityOperator(ComplexMatrix matrix, Dims dims)
      : matrix_(std::move(matrix)), dims_(std::move(dims)) {}

  ComplexMatrix matrix_;
  Dims dims_;
};

// Eigenvalues of a state sorted in decreasing order.
struct Spectrum {
  std::vector<double> values;

  // Sorts decreasingly and clips entries in [-kPsdTol, 0) to zero. Throws
  // NotPositive for entries below -kPsdTol and PreconditionUnmet when the
  // entries do not sum to one within kTraceTol.
  static Spectrum from_probabilities(std::vector<double> p);

  std::size_t size() const noexcept { return values.size(); }
};

struct Unitary {
  ComplexMatrix matrix;

  // Throws NotSquare or BadParameter when U^dagger U deviates from the
  // identity by more than 1e-10 in any entry.
  static Unitary checked(ComplexMatrix m);
  int dim() const noexcept { return static_cast<int>(matrix.rows()); }
};

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // squared Schmidt coefficients, decreasing
  ComplexMatrix basis_a;             // N^A x n, orthonormal columns
  ComplexMatrix basis_b;             // N^B x n, orthonormal columns
  int schmidt_number = 0;
};

DensityOperator make_density(const ComplexMatrix& matrix, Dims dims);
DensityOperator pure_density(const ComplexVector& psi, Dims dims);

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Reduced state on the subsystems listed in `keep` (in increasing order of
// subsystem index, duplicates rejected).
DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep);

// Merges the first `split` subsystems into block A and the rest into block B.
DensityOperator group_bipartite(const DensityOperator& rho, int split);

// Eigen-decomposition of a Hermitian matrix: eigenvalues in decreasing order
// with matching eigenvector columns.
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;
};
HermitianEigen hermitian_eigen(const ComplexMatrix& h);
// Decreasing eigenvalues only.
RealVector hermitian_eigenvalues(const ComplexMatrix& h);

std::pair<Spectrum, Unitary> eig_hermitian(const DensityOperator& rho);
Spectrum spectrum(const DensityOperator& rho);

double hs_norm_sq(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

SchmidtDecomposition schmidt(const ComplexVector& psi, const Dims& dims);

Unitary haar_unitary(int n, Rng& rng);
DensityOperator random_density(int n, Rng& rng);
DensityOperator random_density(const Dims& dims, Rng& rng);
ComplexVector random_pure(const Dims& dims, Rng& rng);

// True iff p is majorized by q (p ≺ q); the shorter vector is padded with
// zeros.
bool majorizes(const Spectrum& p, const Spectrum& q);

}  // namespace unicorr
