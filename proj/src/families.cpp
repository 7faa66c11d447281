#include "unicorr/families.hpp"

#include <cmath>
#include <string>

namespace unicorr {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::BadParameter, what);
}

// Tr rho^q of the pseudopure state, scaled by (N^{AB})^q.
PowerSum pseudopure_before(int n_ab, double p) {
  return PowerSum{{{n_ab - 1.0, 1.0 - p}, {1.0, 1.0 + (n_ab - 1.0) * p}}};
}

}  // namespace

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Pseudopure: return "pseudopure";
    case FamilyKind::Isotropic: return "isotropic";
    case FamilyKind::Werner: return "werner";
  }
  return "?";
}

FamilyKind parse_family(std::string_view text) {
  if (text == "pseudopure") return FamilyKind::Pseudopure;
  if (text == "isotropic") return FamilyKind::Isotropic;
  if (text == "werner") return FamilyKind::Werner;
  throw Error(ErrorCode::BadKind, "unknown family " + std::string(text));
}

FamilySpec FamilySpec::pseudopure(ComplexVector psi, int na, int nb, double p) {
  FamilySpec s{FamilyKind::Pseudopure, na, nb, p, std::move(psi)};
  s.validate();
  return s;
}

FamilySpec FamilySpec::pseudopure_max_entangled(int n, double p) {
  return pseudopure(max_entangled(n), n, n, p);
}

FamilySpec FamilySpec::isotropic(int n, double y) {
  FamilySpec s{FamilyKind::Isotropic, n, n, y, {}};
  s.validate();
  return s;
}

FamilySpec FamilySpec::werner(int n, double x) {
  FamilySpec s{FamilyKind::Werner, n, n, x, {}};
  s.validate();
  return s;
}

void FamilySpec::validate() const {
  require(na >= 1 && nb >= 1, "dimensions must be >= 1");
  const double eps = 1e-12;
  switch (kind) {
    case FamilyKind::Pseudopure:
      require(parameter >= -eps && parameter <= 1.0 + eps, "p must lie in [0, 1]");
      require(psi.size() == na * nb, "pure state size must be N^A N^B");
      require(std::abs(psi.norm() - 1.0) <= 1e-10, "pure state must be normalized");
      break;
    case FamilyKind::Isotropic:
      require(na == nb && na >= 2, "isotropic states need N^A = N^B >= 2");
      require(parameter >= 1.0 / (na * na) - eps && parameter <= 1.0 + eps,
              "y must lie in [1/N^2, 1]");
      break;
    case FamilyKind::Werner:
      require(na == nb && na >= 2, "Werner states need N^A = N^B >= 2");
      require(parameter >= -1.0 - eps && parameter <= 1.0 + eps, "x must lie in [-1, 1]");
      break;
  }
}

ComplexVector max_entangled(int n) {
  ComplexVector v = ComplexVector::Zero(n * n);
  for (int i = 0; i < n; ++i) v(i * n + i) = 1.0 / std::sqrt(static_cast<double>(n));
  return v;
}

ComplexMatrix swap_operator(int n) {
  ComplexMatrix f = ComplexMatrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f(i * n + j, j * n + i) = 1.0;
  return f;
}

double isotropic_y_to_p(int n, double y) {
  const double n2 = static_cast<double>(n) * n;
  return (n2 * y - 1.0) / (n2 - 1.0);
}

DensityOperator build(const FamilySpec& spec) {
  spec.validate();
  const int n = spec.na * spec.nb;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const double t = spec.parameter;
  ComplexMatrix m;
  switch (spec.kind) {
    case FamilyKind::Pseudopure:
      m = (1.0 - t) / n * id + t * spec.psi * spec.psi.adjoint();
      break;
    case FamilyKind::Isotropic: {
      const double n2 = static_cast<double>(n);
      const ComplexVector plus = max_entangled(spec.na);
      m = (1.0 - t) / (n2 - 1.0) * id + (n2 * t - 1.0) / (n2 - 1.0) * plus * plus.adjoint();
      break;
    }
    case FamilyKind::Werner: {
      const double d = spec.na;
      const double denom = d * d * d - d;
      m = (d - t) / denom * id + (d * t - 1.0) / denom * swap_operator(spec.na);
      break;
    }
  }
  return make_density(m, Dims{spec.na, spec.nb});
}

double pseudopure_closed_form(const FamilySpec& spec, Side /*side*/, const EntropicIndices& idx) {
  if (spec.kind != FamilyKind::Pseudopure) {
    throw Error(ErrorCode::BadKind, "pseudopure closed form needs a pseudopure family");
  }
  spec.validate();
  const SchmidtDecomposition sd = schmidt(spec.psi, Dims{spec.na, spec.nb});
  const int n_ab = spec.na * spec.nb;
  const double p = spec.parameter;
  PowerSum after{{{static_cast<double>(n_ab - sd.schmidt_number), 1.0 - p}}};
  for (double lambda : sd.coefficients) after.terms.emplace_back(1.0, 1.0 + (n_ab * lambda - 1.0) * p);
  return ratio_measure(after, pseudopure_before(n_ab, p), idx);
}

double isotropic_closed_form(int n, double y, const EntropicIndices& idx) {
  FamilySpec::isotropic(n, y);
  const double d = n, d2 = d * d;
  const PowerSum num{{{d * (d - 1.0), 1.0 - y}, {d, 1.0 - y + d * y - 1.0 / d}}};
  const PowerSum den{{{1.0, (d2 - 1.0) * y}, {d2 - 1.0, 1.0 - y}}};
  return ratio_measure(num, den, idx);
}

double werner_spectrum_form(int n, double x, const EntropicIndices& idx) {
  FamilySpec::werner(n, x);
  const double d = n, d2 = d * d, d3 = d2 * d;
  const PowerSum before{{{d * (d + 1.0) / 2.0, (1.0 + x) / (d2 + d)},
                         {d * (d - 1.0) / 2.0, (1.0 - x) / (d2 - d)}}};
  const double a = (d - x) / (d3 - d), b = (d * x - 1.0) / (d3 - d);
  const PowerSum after{{{d, a + b}, {d2 - d, a}}};
  return ratio_measure(after, before, idx);
}

double werner_printed_form(int n, double x, const EntropicIndices& idx) {
  FamilySpec::werner(n, x);
  const double d = n;
  const PowerSum num{{{2.0, (d - 1.0) * (x + 1.0)}, {2.0 * (d - 1.0), d - x}}};
  const PowerSum den{{{2.0, (d - 1.0) * (x + 1.0)},
                      {d - 1.0, d - x + 0.5 * d * x - 0.5},
                      {d - 1.0, d - x - 0.5 * d * x + 0.5}}};
  return ratio_measure(num, den, idx);
}

IsotropicSpecializations isotropic_specializations(int n, double p, double q) {
  require(n >= 2, "N must be >= 2");
  require(p >= 0.0 && p <= 1.0, "p must lie in [0, 1]");
  const FamilySpec spec = FamilySpec::pseudopure_max_entangled(n, p);
  IsotropicSpecializations out;
  out.tsallis = pseudopure_closed_form(spec, Side::AB, EntropicIndices::tsallis(q));

  const EntropicIndices renyi = EntropicIndices::renyi(q);
  if (renyi.regime == Regime::VonNeumann) {
    out.renyi = pseudopure_closed_form(spec, Side::AB, renyi);
    return out;
  }
  const double d = n;
  const double num = d * std::pow(1.0 - p + d * p, q) + (d * d - d) * std::pow(1.0 - p, q);
  const double den = std::pow(1.0 - p + d * d * p, q) + (d * d - 1.0) * std::pow(1.0 - p, q);
  out.renyi = std::log(num / den) / (1.0 - q);
  return out;
}

double isotropic_tsallis_printed(int n, double p, double q) {
  const double d = n;
  return 1.0 / (1.0 - q) / std::pow(d, 2.0 * q) *
         (d * std::pow(1.0 - p + d * p, q) -
          std::pow(1.0 - p + d * d * p, q) * (d - 1.0) * std::pow(1.0 - p, q));
}

}  // namespace unicorr
