#include "unicorr/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace unicorr {

namespace {

void require_bipartite(const DensityOperator& rho) {
  if (rho.subsystem_count() != 2) {
    throw Error(ErrorCode::DimMismatch,
                "local measurements need a two-block state; use group_bipartite first");
  }
}

void check_measurement(const DensityOperator& rho, const LocalMeasurement& m) {
  require_bipartite(rho);
  if (m.measures_a() && (!m.basis_a || m.basis_a->dim() != rho.dims()[0])) {
    throw Error(ErrorCode::DimMismatch, "basis on A does not match N^A");
  }
  if (m.measures_b() && (!m.basis_b || m.basis_b->dim() != rho.dims()[1])) {
    throw Error(ErrorCode::DimMismatch, "basis on B does not match N^B");
  }
}

// Local frame W with rho expressed as W^dagger rho W.
ComplexMatrix frame(const DensityOperator& rho, const LocalMeasurement& m) {
  const int na = rho.dims()[0], nb = rho.dims()[1];
  const ComplexMatrix ua =
      m.measures_a() ? m.basis_a->unitary.matrix : ComplexMatrix::Identity(na, na);
  const ComplexMatrix ub =
      m.measures_b() ? m.basis_b->unitary.matrix : ComplexMatrix::Identity(nb, nb);
  return kron(ua, ub);
}

// Zeroes every coherence between different outcomes of the measured side(s).
void project_in_frame(ComplexMatrix& r, int na, int nb, Side side) {
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b)
      for (int a2 = 0; a2 < na; ++a2)
        for (int b2 = 0; b2 < nb; ++b2) {
          const bool keep = (side == Side::A)   ? a == a2
                            : (side == Side::B) ? b == b2
                                                : (a == a2 && b == b2);
          if (!keep) r(a * nb + b, a2 * nb + b2) = 0.0;
        }
}

void append_eigenvalues(const ComplexMatrix& block, std::vector<double>& out) {
  const RealVector ev = hermitian_eigenvalues(block);
  for (Eigen::Index i = 0; i < ev.size(); ++i) out.push_back(std::max(ev(i), 0.0));
}

}  // namespace

ProjectiveBasis ProjectiveBasis::checked(ComplexMatrix columns) {
  return ProjectiveBasis{Unitary::checked(std::move(columns))};
}

ProjectiveBasis ProjectiveBasis::computational(int n) {
  return ProjectiveBasis{Unitary{ComplexMatrix::Identity(n, n)}};
}

std::string_view to_string(Side side) {
  switch (side) {
    case Side::A: return "A";
    case Side::B: return "B";
    case Side::AB: return "AB";
  }
  return "?";
}

Side parse_side(std::string_view text) {
  if (text == "A") return Side::A;
  if (text == "B") return Side::B;
  if (text == "AB") return Side::AB;
  throw Error(ErrorCode::BadParameter, "side must be A, B or AB, got " + std::string(text));
}

LocalMeasurement LocalMeasurement::on_a(ProjectiveBasis a) {
  return LocalMeasurement{Side::A, std::move(a), std::nullopt};
}
LocalMeasurement LocalMeasurement::on_b(ProjectiveBasis b) {
  return LocalMeasurement{Side::B, std::nullopt, std::move(b)};
}
LocalMeasurement LocalMeasurement::on_ab(ProjectiveBasis a, ProjectiveBasis b) {
  return LocalMeasurement{Side::AB, std::move(a), std::move(b)};
}

DensityOperator dephase(const DensityOperator& rho, const ProjectiveBasis& basis) {
  if (basis.dim() != rho.dim()) throw Error(ErrorCode::DimMismatch, "basis dimension mismatch");
  const ComplexMatrix& u = basis.unitary.matrix;
  const ComplexMatrix r = u.adjoint() * rho.matrix() * u;
  const ComplexVector diag = r.diagonal().real().cwiseMax(0.0).cast<Complex>();
  return DensityOperator::adopt(u * diag.asDiagonal() * u.adjoint(), rho.dims());
}

DensityOperator apply_local(const DensityOperator& rho, const LocalMeasurement& m) {
  check_measurement(rho, m);
  const ComplexMatrix w = frame(rho, m);
  ComplexMatrix r = w.adjoint() * rho.matrix() * w;
  project_in_frame(r, rho.dims()[0], rho.dims()[1], m.side);
  return DensityOperator::adopt(w * r * w.adjoint(), rho.dims());
}

void measured_spectrum_into(const ComplexMatrix& rho, int na, int nb, Side side,
                            const ComplexMatrix& ua, const ComplexMatrix& ub,
                            std::vector<double>& out) {
  const bool on_a = side != Side::B, on_b = side != Side::A;
  const ComplexMatrix w = kron(on_a ? ua : ComplexMatrix::Identity(na, na),
                               on_b ? ub : ComplexMatrix::Identity(nb, nb));
  const ComplexMatrix r = w.adjoint() * rho * w;
  out.clear();
  switch (side) {
    case Side::A:
      for (int a = 0; a < na; ++a) append_eigenvalues(r.block(a * nb, a * nb, nb, nb), out);
      break;
    case Side::B: {
      ComplexMatrix block(na, na);
      for (int b = 0; b < nb; ++b) {
        for (int a = 0; a < na; ++a)
          for (int a2 = 0; a2 < na; ++a2) block(a, a2) = r(a * nb + b, a2 * nb + b);
        append_eigenvalues(block, out);
      }
      break;
    }
    case Side::AB:
      for (int i = 0; i < na * nb; ++i) out.push_back(std::max(r(i, i).real(), 0.0));
      break;
  }
  std::sort(out.begin(), out.end(), std::greater<>());
}

std::vector<double> measured_spectrum(const DensityOperator& rho, const LocalMeasurement& m) {
  check_measurement(rho, m);
  const int na = rho.dims()[0], nb = rho.dims()[1];
  const ComplexMatrix id_a = ComplexMatrix::Identity(na, na);
  const ComplexMatrix id_b = ComplexMatrix::Identity(nb, nb);
  std::vector<double> out;
  out.reserve(na * nb);
  measured_spectrum_into(rho.matrix(), na, nb, m.side,
                         m.measures_a() ? m.basis_a->unitary.matrix : id_a,
                         m.measures_b() ? m.basis_b->unitary.matrix : id_b, out);
  return out;
}

ConditionalDecomposition conditional_decomposition(const DensityOperator& rho,
                                                   const LocalMeasurement& m) {
  check_measurement(rho, m);
  const int na = rho.dims()[0], nb = rho.dims()[1];
  const ComplexMatrix w = frame(rho, m);
  const ComplexMatrix r = w.adjoint() * rho.matrix() * w;
  ConditionalDecomposition out;

  if (m.side == Side::AB) {
    for (int i = 0; i < na * nb; ++i) out.probabilities.push_back(std::max(r(i, i).real(), 0.0));
    return out;
  }

  // the frame is the identity on the unmeasured side, so conditional states
  // come out in its original basis
  const int outcomes = m.side == Side::A ? na : nb;
  const int other = m.side == Side::A ? nb : na;
  for (int i = 0; i < outcomes; ++i) {
    ComplexMatrix block(other, other);
    for (int x = 0; x < other; ++x)
      for (int y = 0; y < other; ++y)
        block(x, y) = m.side == Side::A ? r(i * nb + x, i * nb + y) : r(x * nb + i, y * nb + i);
    const double p = std::max(block.trace().real(), 0.0);
    out.probabilities.push_back(p);
    if (p < kOutcomeTol) {
      out.conditionals.emplace_back(std::nullopt);
    } else {
      out.conditionals.emplace_back(
          DensityOperator::adopt(block / p, Dims{other}));
    }
  }
  return out;
}

double log_trace_or_entropy(std::span<const double> p, const EntropicIndices& idx) {
  if (idx.regime == Regime::VonNeumann) return shannon_entropy(p);
  return std::log(power_trace(p, idx.q));
}

double disturbance_value(double before_log_trace, std::span<const double> after,
                         const EntropicIndices& idx) {
  const double after_value = log_trace_or_entropy(after, idx);
  switch (idx.regime) {
    case Regime::VonNeumann:
      return after_value - before_log_trace;
    case Regime::Renyi:
      return (after_value - before_log_trace) / (1.0 - idx.q);
    case Regime::Unified:
      return unified_from_log_trace(after_value - before_log_trace, idx);
  }
  return 0.0;
}

DisturbanceReport disturbance_from_spectra(std::span<const double> before,
                                           std::span<const double> after,
                                           const EntropicIndices& idx) {
  DisturbanceReport rep;
  rep.entropy_before = unified_entropy_spectrum(before, idx);
  rep.entropy_after = unified_entropy_spectrum(after, idx);
  rep.rescale = purity_rescale(before, idx);
  if (idx.regime == Regime::Unified) {
    const double log_ratio =
        std::log(power_trace(after, idx.q)) - std::log(power_trace(before, idx.q));
    rep.purity_ratio = std::exp(idx.s * log_ratio);
  }
  rep.disturbance = disturbance_value(log_trace_or_entropy(before, idx), after, idx);
  return rep;
}

double purity_ratio(const DensityOperator& rho, const LocalMeasurement& m,
                    const EntropicIndices& idx) {
  if (idx.regime != Regime::Unified) {
    check_measurement(rho, m);
    return 1.0;
  }
  const std::vector<double> after = measured_spectrum(rho, m);
  const Spectrum before = spectrum(rho);
  const double log_ratio =
      std::log(power_trace(after, idx.q)) - std::log(power_trace(before.values, idx.q));
  return std::exp(idx.s * log_ratio);
}

DisturbanceReport disturbance(const DensityOperator& rho, const LocalMeasurement& m,
                              const EntropicIndices& idx) {
  const std::vector<double> after = measured_spectrum(rho, m);
  const Spectrum before = spectrum(rho);
  return disturbance_from_spectra(before.values, after, idx);
}

DisturbanceReport disturbance(const DensityOperator& rho, const ProjectiveBasis& global,
                              const EntropicIndices& idx) {
  if (global.dim() != rho.dim()) throw Error(ErrorCode::DimMismatch, "basis dimension mismatch");
  const ComplexMatrix& u = global.unitary.matrix;
  const ComplexMatrix r = u.adjoint() * rho.matrix() * u;
  std::vector<double> after(rho.dim());
  for (int i = 0; i < rho.dim(); ++i) after[i] = std::max(r(i, i).real(), 0.0);
  std::sort(after.begin(), after.end(), std::greater<>());
  const Spectrum before = spectrum(rho);
  return disturbance_from_spectra(before.values, after, idx);
}

}  // namespace unicorr
