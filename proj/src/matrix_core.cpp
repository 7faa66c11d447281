#include "unicorr/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace unicorr {

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

void check_dims(const Dims& dims, int n) {
  if (dims.empty()) throw Error(ErrorCode::DimMismatch, "empty dimension list");
  for (int d : dims) {
    if (d < 1) throw Error(ErrorCode::DimMismatch, "subsystem dimension must be >= 1");
  }
  if (dims_product(dims) != n) {
    throw Error(ErrorCode::DimMismatch,
                "product of dims " + std::to_string(dims_product(dims)) +
                    " does not match matrix dimension " + std::to_string(n));
  }
}

}  // namespace

int dims_product(std::span<const int> dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

DensityOperator DensityOperator::adopt(ComplexMatrix matrix, Dims dims) {
  return DensityOperator(hermitian_part(matrix), std::move(dims));
}

Spectrum Spectrum::from_probabilities(std::vector<double> p) {
  double sum = 0.0;
  for (double& v : p) {
    if (v < -kPsdTol) throw Error(ErrorCode::NotPositive, "negative probability");
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (std::abs(sum - 1.0) > kTraceTol) {
    throw Error(ErrorCode::PreconditionUnmet, "probabilities do not sum to one");
  }
  std::sort(p.begin(), p.end(), std::greater<>());
  return Spectrum{std::move(p)};
}

Unitary Unitary::checked(ComplexMatrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "unitary must be square");
  const ComplexMatrix id = ComplexMatrix::Identity(m.rows(), m.cols());
  if (max_abs_diff(m.adjoint() * m, id) > 1e-10) {
    throw Error(ErrorCode::BadParameter, "matrix is not unitary");
  }
  return Unitary{std::move(m)};
}

DensityOperator make_density(const ComplexMatrix& matrix, Dims dims) {
  if (matrix.rows() != matrix.cols()) {
    throw Error(ErrorCode::NotSquare, "density matrix must be square");
  }
  const int n = static_cast<int>(matrix.rows());
  check_dims(dims, n);

  if (max_abs_diff(matrix, matrix.adjoint()) > kHermitianTol) {
    throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within tolerance");
  }
  ComplexMatrix h = hermitian_part(matrix);
  const double trace = h.trace().real();
  if (!(trace > kTraceTol)) throw Error(ErrorCode::TraceZero, "trace is not positive");

  HermitianEigen eig = hermitian_eigen(h / trace);
  const double smallest = eig.values.minCoeff();
  if (smallest < -kPsdTol) {
    throw Error(ErrorCode::NotPositive,
                "eigenvalue " + std::to_string(smallest) + " below -1e-10");
  }
  if (smallest < 0.0) {
    RealVector clipped = eig.values.cwiseMax(0.0);
    clipped /= clipped.sum();
    h = eig.vectors * clipped.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    return DensityOperator::adopt(std::move(h), std::move(dims));
  }
  return DensityOperator::adopt(h / trace, std::move(dims));
}

DensityOperator pure_density(const ComplexVector& psi, Dims dims) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw Error(ErrorCode::NotNormalized, "state vector is not normalized");
  }
  check_dims(dims, static_cast<int>(psi.size()));
  return DensityOperator::adopt(psi * psi.adjoint(), std::move(dims));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityOperator::adopt(kron(a.matrix(), b.matrix()), std::move(dims));
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep) {
  const Dims& dims = rho.dims();
  const int k = rho.subsystem_count();
  if (keep.empty()) throw Error(ErrorCode::BadSubsystemIndex, "nothing to keep");
  std::vector<bool> kept(k, false);
  int last = -1;
  for (int idx : keep) {
    if (idx < 0 || idx >= k || idx <= last) {
      throw Error(ErrorCode::BadSubsystemIndex,
                  "subsystem index " + std::to_string(idx) + " invalid or out of order");
    }
    kept[idx] = true;
    last = idx;
  }

  // strides of the row-major multi-index
  std::vector<int> stride(k, 1);
  for (int i = k - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  Dims out_dims;
  std::vector<int> kept_ids, traced_ids;
  for (int i = 0; i < k; ++i) {
    if (kept[i]) {
      out_dims.push_back(dims[i]);
      kept_ids.push_back(i);
    } else {
      traced_ids.push_back(i);
    }
  }
  const int dk = dims_product(out_dims);
  int dt = 1;
  for (int i : traced_ids) dt *= dims[i];

  // offset of each kept / traced multi-index in the full index
  auto offsets = [&](const std::vector<int>& ids, int total) {
    std::vector<int> off(total, 0);
    for (int flat = 0; flat < total; ++flat) {
      int rem = flat, o = 0;
      for (int j = static_cast<int>(ids.size()) - 1; j >= 0; --j) {
        const int d = dims[ids[j]];
        o += (rem % d) * stride[ids[j]];
        rem /= d;
      }
      off[flat] = o;
    }
    return off;
  };
  const std::vector<int> kept_off = offsets(kept_ids, dk);
  const std::vector<int> traced_off = offsets(traced_ids, dt);

  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (int a = 0; a < dk; ++a) {
    for (int b = 0; b < dk; ++b) {
      Complex acc = 0.0;
      for (int t = 0; t < dt; ++t) acc += m(kept_off[a] + traced_off[t], kept_off[b] + traced_off[t]);
      out(a, b) = acc;
    }
  }
  return DensityOperator::adopt(std::move(out), std::move(out_dims));
}

DensityOperator group_bipartite(const DensityOperator& rho, int split) {
  const Dims& dims = rho.dims();
  if (split < 1 || split >= static_cast<int>(dims.size())) {
    throw Error(ErrorCode::BadSubsystemIndex, "split must leave both blocks nonempty");
  }
  const std::span<const int> all(dims);
  return DensityOperator::adopt(
      rho.matrix(), Dims{dims_product(all.first(split)), dims_product(all.subspan(split))});
}

HermitianEigen hermitian_eigen(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  const Eigen::Index n = h.rows();
  HermitianEigen out{RealVector(n), ComplexMatrix(n, n)};
  // the solver returns increasing order
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& h) {
  const Eigen::Index n = h.rows();
  if (n == 1) return RealVector::Constant(1, h(0, 0).real());
  if (n == 2) {
    const double a = h(0, 0).real(), d = h(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double r = std::hypot(0.5 * (a - d), std::abs(h(0, 1)));
    RealVector out(2);
    out << mean + r, mean - r;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues().reverse();
}

std::pair<Spectrum, Unitary> eig_hermitian(const DensityOperator& rho) {
  HermitianEigen eig = hermitian_eigen(rho.matrix());
  std::vector<double> p(eig.values.data(), eig.values.data() + eig.values.size());
  for (double& v : p) v = std::max(v, 0.0);
  return {Spectrum{std::move(p)}, Unitary{std::move(eig.vectors)}};
}

Spectrum spectrum(const DensityOperator& rho) {
  const RealVector ev = hermitian_eigenvalues(rho.matrix());
  std::vector<double> p(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) p[i] = std::max(ev(i), 0.0);
  return Spectrum{std::move(p)};
}

double hs_norm_sq(const ComplexMatrix& a) { return a.squaredNorm(); }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimMismatch, "shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

SchmidtDecomposition schmidt(const ComplexVector& psi, const Dims& dims) {
  if (dims.size() != 2) throw Error(ErrorCode::DimMismatch, "Schmidt needs two subsystems");
  check_dims(dims, static_cast<int>(psi.size()));
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw Error(ErrorCode::NotNormalized, "state vector is not normalized");
  }
  const int na = dims[0], nb = dims[1];
  ComplexMatrix coeff(na, nb);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b) coeff(a, b) = psi(a * nb + b);

  Eigen::JacobiSVD<ComplexMatrix> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  SchmidtDecomposition out;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) * sv(k) > kSchmidtTol) ++out.schmidt_number;
  }
  const int n = out.schmidt_number;
  out.coefficients.resize(n);
  double total = 0.0;
  for (int k = 0; k < n; ++k) total += out.coefficients[k] = sv(k) * sv(k);
  for (double& l : out.coefficients) l /= total;
  out.basis_a = svd.matrixU().leftCols(n);
  // psi_ab = sum_k s_k U_ak conj(V_bk)
  out.basis_b = svd.matrixV().leftCols(n).conjugate();
  return out;
}

Unitary haar_unitary(int n, Rng& rng) {
  if (n < 1) throw Error(ErrorCode::BadParameter, "dimension must be >= 1");
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  ComplexMatrix g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    q.col(i) *= mag > 0.0 ? d / mag : Complex(1.0);
  }
  return Unitary{std::move(q)};
}

DensityOperator random_density(const Dims& dims, Rng& rng) {
  const int n = dims_product(dims);
  if (n < 1) throw Error(ErrorCode::BadParameter, "dimension must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = Complex(gauss(rng), gauss(rng));
  ComplexMatrix w = g * g.adjoint();
  w /= w.trace().real();
  return DensityOperator::adopt(std::move(w), dims);
}

DensityOperator random_density(int n, Rng& rng) { return random_density(Dims{n}, rng); }

ComplexVector random_pure(const Dims& dims, Rng& rng) {
  const int n = dims_product(dims);
  if (n < 1) throw Error(ErrorCode::BadParameter, "dimension must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v / v.norm();
}

bool majorizes(const Spectrum& p, const Spectrum& q) {
  const std::size_t n = std::max(p.size(), q.size());
  double sp = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sp += i < p.size() ? p.values[i] : 0.0;
    sq += i < q.size() ? q.values[i] : 0.0;
    if (sp > sq + kMajorizationTol) return false;
  }
  return std::abs(sp - sq) <= kMajorizationTol;
}

}  // namespace unicorr
