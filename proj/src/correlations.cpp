#include "unicorr/correlations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "unicorr/parametrization.hpp"

namespace unicorr {

namespace {

constexpr double kPi = std::numbers::pi;

void require_bipartite(const DensityOperator& rho) {
  if (rho.subsystem_count() != 2) {
    throw Error(ErrorCode::DimMismatch, "expected a two-block state");
  }
}

ComplexMatrix local_eigenbasis(const DensityOperator& rho, int keep) {
  const int k[1] = {keep};
  return hermitian_eigen(partial_trace(rho, k).matrix()).vectors;
}

// Disturbance as a function of generator angles around fixed anchor bases.
// Angles for A come first when both sides are free.
class AnchoredObjective {
 public:
  AnchoredObjective(const DensityOperator& rho, Side side, const EntropicIndices& idx,
                    double before, ComplexMatrix anchor_a, ComplexMatrix anchor_b, bool free_a,
                    bool free_b)
      : rho_(rho.matrix()),
        na_(rho.dims()[0]),
        nb_(rho.dims()[1]),
        side_(side),
        idx_(idx),
        before_(before),
        anchor_a_(std::move(anchor_a)),
        anchor_b_(std::move(anchor_b)),
        free_a_(free_a),
        free_b_(free_b) {}

  int dimension() const {
    return (free_a_ ? generator_count(na_) : 0) + (free_b_ ? generator_count(nb_) : 0);
  }

  std::pair<ComplexMatrix, ComplexMatrix> bases(std::span<const double> x) const {
    ComplexMatrix ua = anchor_a_, ub = anchor_b_;
    std::size_t off = 0;
    if (free_a_) {
      const auto ga = x.subspan(0, generator_count(na_));
      ua = anchor_a_ * generator_exponential(ga, na_);
      off = ga.size();
    }
    if (free_b_) ub = anchor_b_ * generator_exponential(x.subspan(off, generator_count(nb_)), nb_);
    return {std::move(ua), std::move(ub)};
  }

  double operator()(std::span<const double> x) const {
    const auto [ua, ub] = bases(x);
    thread_local std::vector<double> after;
    measured_spectrum_into(rho_, na_, nb_, side_, ua, ub, after);
    return disturbance_value(before_, after, idx_);
  }

 private:
  const ComplexMatrix& rho_;
  int na_, nb_;
  Side side_;
  EntropicIndices idx_;
  double before_;
  ComplexMatrix anchor_a_, anchor_b_;
  bool free_a_, free_b_;
};

SimplexOptions simplex_options(const CorrelationOptions& opts) {
  SimplexOptions s;
  s.tol = opts.tol;
  s.max_iter = opts.max_iter;
  return s;
}

std::vector<SimplexResult> run_multistart(kernels::Execution exec, int n,
                                          const std::function<SimplexResult(int)>& run) {
  return exec == kernels::Execution::Parallel ? kernels::multistart(n, run)
                                              : kernels::ref::multistart(n, run);
}

kernels::ArgMin run_argmin(kernels::Execution exec, std::int64_t n,
                           const std::function<double(std::int64_t)>& f) {
  return exec == kernels::Execution::Parallel ? kernels::grid_argmin(n, f)
                                              : kernels::ref::grid_argmin(n, f);
}

LocalMeasurement make_measurement(Side side, const ComplexMatrix& ua, const ComplexMatrix& ub) {
  LocalMeasurement m;
  m.side = side;
  if (side != Side::B) m.basis_a = ProjectiveBasis{Unitary{ua}};
  if (side != Side::A) m.basis_b = ProjectiveBasis{Unitary{ub}};
  return m;
}

}  // namespace

LocalMeasurement MeasurementParams::decode(int na, int nb) const {
  LocalMeasurement m;
  m.side = side;
  if (side != Side::B) m.basis_a = decode_basis(angles_a, na);
  if (side != Side::A) m.basis_b = decode_basis(angles_b, nb);
  return m;
}

CorrelationResult measure_correlations(const DensityOperator& rho, Side side,
                                       const EntropicIndices& idx,
                                       const CorrelationOptions& opts) {
  require_bipartite(rho);
  if (opts.restarts < 1 || opts.max_iter < 1 || !(opts.tol > 0.0)) {
    throw Error(ErrorCode::BadParameter, "restarts, max_iter and tol must be positive");
  }
  const int na = rho.dims()[0], nb = rho.dims()[1];
  const bool on_a = side != Side::B, on_b = side != Side::A;
  const double before = log_trace_or_entropy(spectrum(rho).values, idx);
  const ComplexMatrix eig_a = local_eigenbasis(rho, 0);
  const ComplexMatrix eig_b = local_eigenbasis(rho, 1);
  const int warm = static_cast<int>(opts.warm_starts.size());
  const int total = opts.restarts + warm;

  auto anchors = [&](int r) -> std::pair<ComplexMatrix, ComplexMatrix> {
    if (r == 0) return {eig_a, eig_b};
    if (r <= warm) {
      const auto& [a, b] = opts.warm_starts[r - 1];
      return {on_a ? a : eig_a, on_b ? b : eig_b};
    }
    Rng rng = task_rng(opts.seed, static_cast<std::uint64_t>(r));
    ComplexMatrix a = haar_unitary(na, rng).matrix;
    ComplexMatrix b = haar_unitary(nb, rng).matrix;
    return {std::move(a), std::move(b)};
  };
  auto objective_for = [&](int r) {
    auto [a, b] = anchors(r);
    return AnchoredObjective(rho, side, idx, before, std::move(a), std::move(b), on_a, on_b);
  };

  const SimplexOptions sopts = simplex_options(opts);
  const std::vector<SimplexResult> runs =
      run_multistart(opts.execution, total, [&](int r) {
        const AnchoredObjective f = objective_for(r);
        return nelder_mead(std::cref(f), std::vector<double>(f.dimension(), 0.0), sopts);
      });

  CorrelationResult res;
  res.restarts_used = total;
  int best = 0;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int r = 0; r < total; ++r) {
    res.iterations += runs[r].iterations;
    if (runs[r].value < runs[best].value) best = r;
    if (runs[r].converged) {
      res.converged = true;
      lo = std::min(lo, runs[r].value);
      hi = std::max(hi, runs[r].value);
    }
  }
  res.spread = res.converged ? hi - lo : 0.0;
  res.value = runs[best].value;
  auto [ua, ub] = objective_for(best).bases(runs[best].x);

  if (side == Side::AB && opts.alternating_refinement) {
    for (int pass = 0; pass < 2; ++pass) {
      const bool free_a = pass == 0;
      const AnchoredObjective f(rho, side, idx, before, ua, ub, free_a, !free_a);
      const SimplexResult r = nelder_mead(std::cref(f), std::vector<double>(f.dimension(), 0.0),
                                          sopts);
      res.iterations += r.iterations;
      if (r.value < res.value) {
        res.value = r.value;
        std::tie(ua, ub) = f.bases(r.x);
      }
    }
  }

  res.argmin.side = side;
  if (on_a) res.argmin.angles_a = encode_basis(ua);
  if (on_b) res.argmin.angles_b = encode_basis(ub);
  res.measurement = make_measurement(side, ua, ub);
  return res;
}

namespace {

// Orthonormal pair {|n>, |-n>} for Bloch angles (theta, phi).
ComplexMatrix bloch_basis(double theta, double phi) {
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  const Complex e = std::polar(1.0, phi);
  ComplexMatrix u(2, 2);
  u(0, 0) = c;
  u(1, 0) = e * s;
  u(0, 1) = -std::conj(e) * s;
  u(1, 1) = c;
  return u;
}

struct AngleWindow {
  double theta0, theta_step, phi0, phi_step;
  int theta_n, phi_n;

  int count() const { return theta_n * phi_n; }
  std::pair<double, double> at(std::int64_t k) const {
    return {theta0 + static_cast<double>(k / phi_n) * theta_step,
            phi0 + static_cast<double>(k % phi_n) * phi_step};
  }
  AngleWindow refined_around(std::int64_t k) const {
    const auto [t, p] = at(k);
    return AngleWindow{t - theta_step, 2.0 * theta_step / (theta_n - 1), p - phi_step,
                       2.0 * phi_step / (phi_n - 1), theta_n, phi_n};
  }
};

}  // namespace

double grid_oracle_qubit(const DensityOperator& rho, Side side, const EntropicIndices& idx,
                         const GridResolution& res, kernels::Execution execution) {
  require_bipartite(rho);
  if (rho.dims()[0] != 2 || rho.dims()[1] != 2) {
    throw Error(ErrorCode::DimMismatch, "grid oracle needs a two-qubit state");
  }
  if (res.theta < 2 || res.phi < 2 || res.refinements < 0) {
    throw Error(ErrorCode::BadParameter, "grid resolution too small");
  }
  const double before = log_trace_or_entropy(spectrum(rho).values, idx);
  const ComplexMatrix& m = rho.matrix();
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);

  AngleWindow wa{0.0, kPi / (res.theta - 1), 0.0, 2.0 * kPi / res.phi, res.theta, res.phi};
  AngleWindow wb = wa;
  double best = std::numeric_limits<double>::infinity();

  for (int level = 0; level <= res.refinements; ++level) {
    if (side != Side::AB) {
      const AngleWindow& w = side == Side::A ? wa : wb;
      const kernels::ArgMin found = run_argmin(execution, w.count(), [&](std::int64_t k) {
        const auto [t, p] = w.at(k);
        const ComplexMatrix u = bloch_basis(t, p);
        std::vector<double> after;
        measured_spectrum_into(m, 2, 2, side, u, u, after);
        return disturbance_value(before, after, idx);
      });
      best = std::min(best, found.value);
      (side == Side::A ? wa : wb) = w.refined_around(found.index);
      continue;
    }

    // Side AB: outer index over the A grid; for each A basis the B scan uses
    // the A-contracted blocks M_i = <a_i| rho |a_i> (2x2 on B).
    std::vector<std::int64_t> best_b(wa.count(), 0);
    const kernels::ArgMin found = run_argmin(execution, wa.count(), [&](std::int64_t ka) {
      const auto [ta, pa] = wa.at(ka);
      const ComplexMatrix ua = bloch_basis(ta, pa);
      const ComplexMatrix w = kron(ua, id);
      const ComplexMatrix r = w.adjoint() * m * w;
      const ComplexMatrix m0 = r.block(0, 0, 2, 2), m1 = r.block(2, 2, 2, 2);
      double local = std::numeric_limits<double>::infinity();
      std::array<double, 4> after{};
      for (std::int64_t kb = 0; kb < wb.count(); ++kb) {
        const auto [tb, pb] = wb.at(kb);
        const ComplexMatrix ub = bloch_basis(tb, pb);
        for (int j = 0; j < 2; ++j) {
          const auto v = ub.col(j);
          after[j] = std::max((v.adjoint() * m0 * v)(0, 0).real(), 0.0);
          after[2 + j] = std::max((v.adjoint() * m1 * v)(0, 0).real(), 0.0);
        }
        const double d = disturbance_value(before, after, idx);
        if (d < local) {
          local = d;
          best_b[ka] = kb;
        }
      }
      return local;
    });
    best = std::min(best, found.value);
    const std::int64_t kb = best_b[found.index];
    wa = wa.refined_around(found.index);
    wb = wb.refined_around(kb);
  }
  return best;
}

double entanglement_lower_bound(const DensityOperator& rho, const EntropicIndices& idx) {
  require_bipartite(rho);
  const Spectrum joint = spectrum(rho);
  const double s_ab = unified_entropy_spectrum(joint, idx);
  const double rescale = purity_rescale(joint.values, idx);
  const int keep_a[1] = {0}, keep_b[1] = {1};
  const double s_a = unified_entropy(partial_trace(rho, keep_a), idx);
  const double s_b = unified_entropy(partial_trace(rho, keep_b), idx);
  return std::max(s_a - s_ab, s_b - s_ab) / rescale;
}

double sequential_term(const DensityOperator& rho, const LocalMeasurement& first,
                       const LocalMeasurement& second, const EntropicIndices& idx) {
  const double ratio = purity_ratio(rho, first, idx);
  return ratio * disturbance(apply_local(rho, first), second, idx).disturbance;
}

BilocalResiduals bilocal_decomposition_check(const DensityOperator& rho,
                                             const ProjectiveBasis& basis_a,
                                             const ProjectiveBasis& basis_b,
                                             const EntropicIndices& idx) {
  const LocalMeasurement ma = LocalMeasurement::on_a(basis_a);
  const LocalMeasurement mb = LocalMeasurement::on_b(basis_b);
  const double d_ab = disturbance(rho, LocalMeasurement::on_ab(basis_a, basis_b), idx).disturbance;
  const double d_a = disturbance(rho, ma, idx).disturbance;
  const double d_b = disturbance(rho, mb, idx).disturbance;
  return BilocalResiduals{std::abs(d_ab - (d_a + sequential_term(rho, ma, mb, idx))),
                          std::abs(d_ab - (d_b + sequential_term(rho, mb, ma, idx)))};
}

namespace {

LocalMeasurement side_of(const LocalMeasurement& m, Side side) {
  if (side == Side::A) return LocalMeasurement::on_a(*m.basis_a);
  if (side == Side::B) return LocalMeasurement::on_b(*m.basis_b);
  return m;
}

// Delta_i for the bilocal measurement pi = Pi^A o Pi^B.
double delta_for(const DensityOperator& rho, const LocalMeasurement& pi,
                 const EntropicIndices& idx) {
  const LocalMeasurement a = side_of(pi, Side::A), b = side_of(pi, Side::B);
  return disturbance(rho, pi, idx).disturbance - sequential_term(rho, b, a, idx) -
         sequential_term(rho, a, b, idx);
}

}  // namespace

TriangleReport triangle_analysis(const DensityOperator& rho, const EntropicIndices& idx,
                                 const CorrelationOptions& opts) {
  require_bipartite(rho);
  const CorrelationResult ra = measure_correlations(rho, Side::A, idx, opts);
  const CorrelationResult rb = measure_correlations(rho, Side::B, idx, opts);
  CorrelationOptions ab_opts = opts;
  ab_opts.warm_starts.emplace_back(ra.measurement.basis_a->unitary.matrix,
                                   rb.measurement.basis_b->unitary.matrix);
  const CorrelationResult rab = measure_correlations(rho, Side::AB, idx, ab_opts);

  TriangleReport rep;
  rep.m_a = ra.value;
  rep.m_b = rb.value;
  rep.m_ab = rab.value;
  ProjectiveBasis a1 = *ra.measurement.basis_a, b1 = *rb.measurement.basis_b;
  ProjectiveBasis a0 = *rab.measurement.basis_a, b0 = *rab.measurement.basis_b;

  // Every evaluated measurement bounds its minimum from above, so the three
  // searches can improve each other.
  for (int round = 0; round < 3; ++round) {
    bool changed = false;
    const double da0 = disturbance(rho, LocalMeasurement::on_a(a0), idx).disturbance;
    if (da0 < rep.m_a) {
      rep.m_a = da0;
      a1 = a0;
      changed = true;
    }
    const double db0 = disturbance(rho, LocalMeasurement::on_b(b0), idx).disturbance;
    if (db0 < rep.m_b) {
      rep.m_b = db0;
      b1 = b0;
      changed = true;
    }
    const double dab1 = disturbance(rho, LocalMeasurement::on_ab(a1, b1), idx).disturbance;
    if (dab1 < rep.m_ab) {
      rep.m_ab = dab1;
      a0 = a1;
      b0 = b1;
      changed = true;
    }
    if (!changed) break;
  }

  rep.pi0 = LocalMeasurement::on_ab(a0, b0);
  rep.pi1 = LocalMeasurement::on_ab(a1, b1);
  rep.delta0 = delta_for(rho, rep.pi0, idx);
  rep.delta1 = delta_for(rho, rep.pi1, idx);

  const double tol = kInequalityTol;
  rep.triangle_holds = rep.m_a + rep.m_b >= rep.m_ab - tol;
  rep.ordering_holds = rep.m_ab >= std::max(rep.m_a, rep.m_b) - tol;
  rep.dadb_holds = rep.m_ab + rep.delta0 >= rep.m_a + rep.m_b - tol &&
                   rep.m_a + rep.m_b >= rep.m_ab + rep.delta1 - tol;

  const LocalMeasurement a0m = LocalMeasurement::on_a(a0), b0m = LocalMeasurement::on_b(b0);
  const LocalMeasurement a1m = LocalMeasurement::on_a(a1), b1m = LocalMeasurement::on_b(b1);
  const double lower = std::max(rep.m_a + sequential_term(rho, a0m, b0m, idx),
                                rep.m_b + sequential_term(rho, b0m, a0m, idx));
  const double upper = std::min(rep.m_a + sequential_term(rho, a1m, b1m, idx),
                                rep.m_b + sequential_term(rho, b1m, a1m, idx));
  rep.lower_bound_holds = rep.m_ab >= lower - tol;
  rep.upper_bound_holds = rep.m_ab <= upper + tol;
  return rep;
}

double contractivity_probe(const DensityOperator& rho, const EntropicIndices& idx, int trials,
                           std::uint64_t seed) {
  require_bipartite(rho);
  if (trials < 1) throw Error(ErrorCode::BadParameter, "trials must be >= 1");
  const EntropicIndices one[1] = {idx};
  return kernels::contractivity_row(rho, one, trials, seed, 0).front();
}

}  // namespace unicorr
