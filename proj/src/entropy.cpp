#include "unicorr/entropy.hpp"

#include <cmath>
#include <limits>

namespace unicorr {

// two-term series below |x| = 1e-12
double unified_from_log_trace(double log_t, const EntropicIndices& idx) {
  const double x = idx.s * log_t;
  const double num = std::abs(x) < 1e-12 ? x + 0.5 * x * x : std::expm1(x);
  return num / ((1.0 - idx.q) * idx.s);
}

EntropicIndices EntropicIndices::make(double q, double s) {
  if (!std::isfinite(q) || !std::isfinite(s) || q <= 0.0) {
    throw Error(ErrorCode::BadIndices, "entropic index q must be finite and > 0");
  }
  Regime regime = Regime::Unified;
  if (std::abs(q - 1.0) <= kRegimeTol) {
    regime = Regime::VonNeumann;
  } else if (std::abs(s) <= kRegimeTol) {
    regime = Regime::Renyi;
  }
  return EntropicIndices{q, s, regime};
}

double power_trace(std::span<const double> p, double q) {
  double t = 0.0;
  for (double v : p) {
    if (v > kSpectralFloor) t += std::pow(v, q);
  }
  return t;
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

double unified_entropy_spectrum(std::span<const double> p, const EntropicIndices& idx) {
  switch (idx.regime) {
    case Regime::VonNeumann:
      return shannon_entropy(p);
    case Regime::Renyi:
      return std::log(power_trace(p, idx.q)) / (1.0 - idx.q);
    case Regime::Unified:
      return unified_from_log_trace(std::log(power_trace(p, idx.q)), idx);
  }
  return 0.0;
}

double unified_entropy_spectrum(const Spectrum& p, const EntropicIndices& idx) {
  return unified_entropy_spectrum(std::span<const double>(p.values), idx);
}

double unified_entropy(const DensityOperator& rho, const EntropicIndices& idx) {
  return unified_entropy_spectrum(spectrum(rho), idx);
}

double max_entropy(int n, const EntropicIndices& idx) {
  if (n < 1) throw Error(ErrorCode::BadParameter, "dimension must be >= 1");
  const double log_n = std::log(static_cast<double>(n));
  if (idx.regime != Regime::Unified) return log_n;
  return unified_from_log_trace((1.0 - idx.q) * log_n, idx);
}

double purity_rescale(std::span<const double> p, const EntropicIndices& idx) {
  if (idx.regime != Regime::Unified) return 1.0;
  return std::exp(idx.s * std::log(power_trace(p, idx.q)));
}

double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw Error(ErrorCode::DimMismatch, "state dimensions differ");
  const HermitianEigen sig = hermitian_eigen(sigma.matrix());
  double cross = 0.0;
  for (Eigen::Index k = 0; k < sig.values.size(); ++k) {
    const auto v = sig.vectors.col(k);
    const double weight = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    if (sig.values(k) < 1e-12) {
      if (weight > 1e-9) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross += weight * std::log(sig.values(k));
  }
  const Spectrum p = spectrum(rho);
  return -shannon_entropy(p.values) - cross;
}

bool check_schur_concavity(const Spectrum& p, const Spectrum& q, const EntropicIndices& idx) {
  const double sp = unified_entropy_spectrum(p, idx);
  const double sq = unified_entropy_spectrum(q, idx);
  if (majorizes(p, q)) return sp >= sq - 1e-10;
  if (majorizes(q, p)) return sq >= sp - 1e-10;
  throw Error(ErrorCode::PreconditionUnmet, "spectra are not comparable under majorization");
}

double PowerSum::at(double q) const {
  double acc = 0.0;
  for (const auto& [c, b] : terms) {
    if (b > 0.0) acc += c * std::pow(b, q);
  }
  return acc;
}

double PowerSum::derivative(double q) const {
  double acc = 0.0;
  for (const auto& [c, b] : terms) {
    if (b > 0.0) acc += c * std::pow(b, q) * std::log(b);
  }
  return acc;
}

double ratio_measure(const PowerSum& num, const PowerSum& den, const EntropicIndices& idx) {
  if (idx.regime == Regime::VonNeumann) {
    return den.derivative(1.0) / den.at(1.0) - num.derivative(1.0) / num.at(1.0);
  }
  const double log_ratio = std::log(num.at(idx.q)) - std::log(den.at(idx.q));
  if (idx.regime == Regime::Renyi) return log_ratio / (1.0 - idx.q);
  return unified_from_log_trace(log_ratio, idx);
}

}  // namespace unicorr
