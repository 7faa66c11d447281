#include "unicorr/parametrization.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include <Eigen/Eigenvalues>

namespace unicorr {

namespace {

std::vector<ComplexMatrix> build_generators(int n) {
  std::vector<ComplexMatrix> out;
  out.reserve(generator_count(n));
  const Complex i(0.0, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(n, n);
      sym(j, k) = sym(k, j) = 1.0;
      ComplexMatrix anti = ComplexMatrix::Zero(n, n);
      anti(j, k) = -i;
      anti(k, j) = i;
      out.push_back(std::move(sym));
      out.push_back(std::move(anti));
    }
  }
  for (int l = 1; l < n; ++l) {
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    const double c = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int m = 0; m < l; ++m) d(m, m) = c;
    d(l, l) = -c * l;
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

const std::vector<ComplexMatrix>& su_generators(int n) {
  static std::mutex mutex;
  static std::map<int, std::vector<ComplexMatrix>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_generators(n)).first;
  return it->second;
}

ComplexMatrix generator_exponential(std::span<const double> angles, int n) {
  if (n < 1 || static_cast<int>(angles.size()) != generator_count(n)) {
    throw Error(ErrorCode::BadLength, "expected " + std::to_string(generator_count(n)) +
                                          " angles for dimension " + std::to_string(n));
  }
  if (n == 1) return ComplexMatrix::Identity(1, 1);
  const Complex i(0.0, 1.0);
  if (n == 2) {
    // exp(-i r/2 n.sigma) = cos(r/2) I - i sin(r/2) n.sigma
    const double x = angles[0], y = angles[1], z = angles[2];
    const double r = std::sqrt(x * x + y * y + z * z);
    const double c = std::cos(0.5 * r);
    const double sr = r > 1e-12 ? std::sin(0.5 * r) / r : 0.5;
    ComplexMatrix u(2, 2);
    u(0, 0) = Complex(c, -sr * z);
    u(1, 1) = Complex(c, sr * z);
    u(0, 1) = -i * sr * Complex(x, -y);
    u(1, 0) = -i * sr * Complex(x, y);
    return u;
  }
  const auto& gens = su_generators(n);
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < generator_count(n); ++k) h += angles[k] * gens[k];
  const HermitianEigen eig = hermitian_eigen(h);
  ComplexVector phases(n);
  for (int k = 0; k < n; ++k) phases(k) = std::exp(-0.5 * i * eig.values(k));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

ProjectiveBasis decode_basis(std::span<const double> angles, int n) {
  return ProjectiveBasis{Unitary{generator_exponential(angles, n)}};
}

std::vector<double> encode_basis(const ComplexMatrix& unitary) {
  const int n = static_cast<int>(unitary.rows());
  if (n == 1) return {};
  // Schur vectors of a normal matrix diagonalize it with a unitary frame,
  // also for degenerate eigenvalues.
  Eigen::ComplexSchur<ComplexMatrix> schur(unitary);
  const ComplexMatrix& z = schur.matrixU();
  const ComplexMatrix& t = schur.matrixT();
  RealVector alpha(n);
  for (int k = 0; k < n; ++k) alpha(k) = std::arg(t(k, k));
  // unitary = z e^{i alpha} z^dagger = exp(-i h / 2) with h = -2 z alpha z^dagger
  ComplexMatrix h = -2.0 * z * alpha.cast<Complex>().asDiagonal() * z.adjoint();
  h -= (h.trace() / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
  const auto& gens = su_generators(n);
  std::vector<double> angles(generator_count(n));
  for (int k = 0; k < generator_count(n); ++k) {
    angles[k] = 0.5 * (h * gens[k]).trace().real();
  }
  return angles;
}

}  // namespace unicorr
