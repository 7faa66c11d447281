#include "unicorr/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "unicorr/random.hpp"

namespace unicorr {

namespace {

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::VonNeumann: return "von_neumann";
    case Regime::Renyi: return "renyi";
    case Regime::Unified: return "unified";
  }
  return "?";
}

std::string dims_text(const Dims& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) out += (i ? "x" : "") + std::to_string(d[i]);
  return out;
}

void echo_options(CsvTable& t, const CorrelationOptions& o) {
  t.meta("restarts", fmt(o.restarts));
  t.meta("optimizer_seed", fmt(static_cast<unsigned long long>(o.seed)));
  t.meta("tol", fmt(o.tol));
  t.meta("max_iter", fmt(o.max_iter));
}

void echo_indices(CsvTable& t, const EntropicIndices& idx) {
  t.meta("q", fmt(idx.q));
  t.meta("s", fmt(idx.s));
  t.meta("regime", regime_name(idx.regime));
}

std::vector<double> even_grid(double lo, double hi, int points) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
  g.back() = hi;
  return g;
}

CorrelationOptions serial(CorrelationOptions o) {
  o.execution = kernels::Execution::Serial;
  return o;
}

DensityOperator classical_state(const Dims& dims, Rng& rng) {
  std::exponential_distribution<double> exp1(1.0);
  const int n = dims_product(dims);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = exp1(rng);
  return make_density(m, dims);
}

DensityOperator pure_ancilla(int n, Rng& rng) {
  return pure_density(random_pure(Dims{n}, rng), Dims{n});
}

}  // namespace

CsvTable run_entropy(const DensityOperator& rho, const std::vector<EntropicIndices>& indices) {
  CsvTable t({"q", "s", "regime", "entropy", "power_trace", "max_entropy"});
  t.meta("command", "entropy");
  t.meta("dims", dims_text(rho.dims()));
  const Spectrum sp = spectrum(rho);
  for (const auto& idx : indices) {
    t.add_row({fmt(idx.q), fmt(idx.s), regime_name(idx.regime), fmt(unified_entropy_spectrum(sp, idx)),
               fmt(power_trace(sp.values, idx.q)), fmt(max_entropy(rho.dim(), idx))});
  }
  return t;
}

CsvTable run_measure(const DensityOperator& rho, Side side, const EntropicIndices& idx,
                     const CorrelationOptions& opts) {
  CsvTable t({"side", "q", "s", "value", "spread", "converged", "restarts_used", "iterations",
              "angles_a", "angles_b"});
  t.meta("command", "measure");
  t.meta("dims", dims_text(rho.dims()));
  echo_indices(t, idx);
  echo_options(t, opts);
  const CorrelationResult r = measure_correlations(rho, side, idx, opts);
  t.add_row({std::string(to_string(side)), fmt(idx.q), fmt(idx.s), fmt(r.value), fmt(r.spread),
             fmt(r.converged), fmt(r.restarts_used), fmt(r.iterations), fmt_list(r.argmin.angles_a),
             fmt_list(r.argmin.angles_b)});
  return t;
}

CsvTable run_family_curve(const FamilyCurveConfig& cfg) {
  const bool werner = cfg.kind == FamilyKind::Werner;
  std::vector<std::string> cols{"parameter", "closed_form", "optimizer_value", "abs_diff"};
  if (werner) {
    cols.push_back("printed_form");
    cols.push_back("printed_minus_closed");
  }
  CsvTable t(cols);
  t.meta("command", "family-curve");
  t.meta("family", std::string(to_string(cfg.kind)));
  t.meta("N", fmt(cfg.n));
  echo_indices(t, cfg.idx);
  echo_options(t, cfg.opts);

  std::vector<double> grid = cfg.grid;
  if (grid.empty()) {
    const double n2 = static_cast<double>(cfg.n) * cfg.n;
    switch (cfg.kind) {
      case FamilyKind::Pseudopure: grid = even_grid(0.0, 1.0, 11); break;
      case FamilyKind::Isotropic: grid = even_grid(1.0 / n2, 1.0, 11); break;
      case FamilyKind::Werner: grid = even_grid(-1.0, 1.0, 11); break;
    }
  }

  std::vector<FamilySpec> specs;
  for (double v : grid) {
    switch (cfg.kind) {
      case FamilyKind::Pseudopure: specs.push_back(FamilySpec::pseudopure_max_entangled(cfg.n, v)); break;
      case FamilyKind::Isotropic: specs.push_back(FamilySpec::isotropic(cfg.n, v)); break;
      case FamilyKind::Werner: specs.push_back(FamilySpec::werner(cfg.n, v)); break;
    }
  }

  std::vector<double> closed(grid.size()), optimized(grid.size());
  const CorrelationOptions inner = serial(cfg.opts);
  kernels::for_each_task(static_cast<std::int64_t>(grid.size()), [&](std::int64_t i) {
    const FamilySpec& spec = specs[i];
    switch (cfg.kind) {
      case FamilyKind::Pseudopure: closed[i] = pseudopure_closed_form(spec, Side::AB, cfg.idx); break;
      case FamilyKind::Isotropic: closed[i] = isotropic_closed_form(cfg.n, grid[i], cfg.idx); break;
      case FamilyKind::Werner: closed[i] = werner_spectrum_form(cfg.n, grid[i], cfg.idx); break;
    }
    optimized[i] = measure_correlations(build(spec), Side::AB, cfg.idx, inner).value;
  });

  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<std::string> row{fmt(grid[i]), fmt(closed[i]), fmt(optimized[i]),
                                 fmt(std::abs(closed[i] - optimized[i]))};
    if (werner) {
      const double printed = werner_printed_form(cfg.n, grid[i], cfg.idx);
      row.push_back(fmt(printed));
      row.push_back(fmt(printed - closed[i]));
    }
    t.add_row(std::move(row));
  }
  return t;
}

std::vector<double> default_fig1_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 60; ++k) g.push_back(k / 10.0);
  return g;
}

std::vector<DensityOperator> fig1_states(int n_states, std::uint64_t seed) {
  std::vector<DensityOperator> states;
  const std::uint64_t stream = derive_seed(seed, 1);
  for (int i = 0; i < n_states; ++i) {
    Rng rng = task_rng(stream, static_cast<std::uint64_t>(i));
    states.push_back(random_density(Dims{2, 2}, rng));
  }
  return states;
}

CsvTable run_fig1(const Fig1Config& cfg) {
  if (cfg.n_states < 1 || cfg.n_measurements < 1) {
    throw Error(ErrorCode::BadParameter, "fig1 needs at least one state and one measurement");
  }
  const std::vector<double> qs = cfg.q_list.empty() ? default_fig1_grid() : cfg.q_list;
  struct Column {
    std::string family;
    double q;
  };
  std::vector<Column> columns;
  std::vector<EntropicIndices> indices;
  for (double q : qs) {
    if (cfg.tsallis) {
      columns.push_back({"tsallis", q});
      indices.push_back(EntropicIndices::tsallis(q));
    }
    if (cfg.renyi) {
      columns.push_back({"renyi", q});
      indices.push_back(EntropicIndices::renyi(q));
    }
  }

  CsvTable t({"state_id", "family", "q", "min_difference", "violated"});
  t.meta("command", "fig1");
  t.meta("seed", fmt(static_cast<unsigned long long>(cfg.seed)));
  t.meta("n_states", fmt(cfg.n_states));
  t.meta("n_measurements", fmt(cfg.n_measurements));
  t.meta("ensemble", "two-qubit Hilbert-Schmidt");
  t.meta("violation_tol", fmt(kViolationTol));

  const std::vector<DensityOperator> states = fig1_states(cfg.n_states, cfg.seed);
  const auto table =
      kernels::contractivity_table(states, indices, cfg.n_measurements, derive_seed(cfg.seed, 2));

  std::vector<std::size_t> order(columns.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return columns[a].family != columns[b].family ? columns[a].family > columns[b].family
                                                  : columns[a].q < columns[b].q;
  });

  int violations = 0;
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (std::size_t k : order) {
      const double v = table[s][k];
      const bool violated = v < -kViolationTol;
      violations += violated;
      t.add_row({fmt(static_cast<int>(s)), columns[k].family, fmt(columns[k].q), fmt(v), fmt(violated)});
    }
  }
  t.footer("violations: " + std::to_string(violations) + " of " +
           std::to_string(states.size() * columns.size()));
  return t;
}

CsvTable run_ancilla_check(const AncillaConfig& cfg) {
  if (cfg.dims.size() != 2) throw Error(ErrorCode::DimMismatch, "ancilla check needs two dims");
  if (cfg.side == Side::AB) {
    throw Error(ErrorCode::BadParameter, "ancilla check supports sides A and B");
  }
  if (cfg.ancilla_dim < 1 || cfg.samples < 1) {
    throw Error(ErrorCode::BadParameter, "ancilla dimension and sample count must be positive");
  }

  CsvTable t({"sample_id", "ancilla_pure", "D_before", "D_after_ancilla", "rescaled_diff",
              "unrescaled_diff", "rescaled_ok"});
  t.meta("command", "ancilla-check");
  t.meta("dims", dims_text(cfg.dims));
  t.meta("ancilla_dim", fmt(cfg.ancilla_dim));
  t.meta("side", std::string(to_string(cfg.side)));
  t.meta("seed", fmt(static_cast<unsigned long long>(cfg.seed)));
  echo_indices(t, cfg.idx);
  echo_options(t, cfg.opts);

  struct Sample {
    bool pure = false;
    double before = 0, after = 0, rescaled = 0, unrescaled = 0;
  };
  std::vector<Sample> out(cfg.samples);
  const CorrelationOptions inner = serial(cfg.opts);
  kernels::for_each_task(cfg.samples, [&](std::int64_t i) {
    Rng rng = task_rng(cfg.seed, static_cast<std::uint64_t>(i));
    const DensityOperator rho = random_density(cfg.dims, rng);
    Sample& s = out[i];
    s.pure = cfg.pure_every > 0 && (i + 1) % cfg.pure_every == 0;
    const DensityOperator anc = s.pure ? pure_ancilla(cfg.ancilla_dim, rng)
                                       : random_density(cfg.ancilla_dim, rng);
    // keep the measured block intact: A|(B C) or (C A)|B
    const DensityOperator big = cfg.side == Side::A ? group_bipartite(tensor(rho, anc), 1)
                                                    : group_bipartite(tensor(anc, rho), 2);
    s.before = measure_correlations(rho, cfg.side, cfg.idx, inner).value;
    s.after = measure_correlations(big, cfg.side, cfg.idx, inner).value;
    const double resc_rho = purity_rescale(spectrum(rho).values, cfg.idx);
    const double resc_big = purity_rescale(spectrum(big).values, cfg.idx);
    s.rescaled = std::abs(s.after - s.before);
    s.unrescaled = std::abs(s.after * resc_big - s.before * resc_rho);
  });

  int bad = 0;
  double max_unrescaled_mixed = 0.0;
  for (int i = 0; i < cfg.samples; ++i) {
    const Sample& s = out[i];
    const bool ok = s.rescaled <= kAncillaTol;
    bad += !ok;
    if (!s.pure) max_unrescaled_mixed = std::max(max_unrescaled_mixed, s.unrescaled);
    t.add_row({fmt(i), fmt(s.pure), fmt(s.before), fmt(s.after), fmt(s.rescaled), fmt(s.unrescaled),
               fmt(ok)});
  }
  t.footer("rescaled_violations: " + std::to_string(bad) + " of " + std::to_string(cfg.samples));
  t.footer("max_unrescaled_diff_mixed: " + fmt(max_unrescaled_mixed));
  return t;
}

std::vector<EntropicIndices> default_triangle_indices() {
  return {EntropicIndices::von_neumann(), EntropicIndices::tsallis(2.0),
          EntropicIndices::tsallis(0.5),  EntropicIndices::tsallis(3.0),
          EntropicIndices::renyi(2.0),    EntropicIndices::make(3.0, 0.5)};
}

CsvTable run_triangle_scan(const TriangleScanConfig& cfg) {
  const std::vector<EntropicIndices> indices =
      cfg.indices.empty() ? default_triangle_indices() : cfg.indices;
  CsvTable t({"state_id", "ensemble", "q", "s", "mA", "mB", "mAB", "delta0", "delta1",
              "triangle_holds", "sandwich_holds", "ordering_holds", "lower_bound_holds",
              "upper_bound_holds"});
  t.meta("command", "triangle-scan");
  t.meta("n_states", fmt(cfg.n_states));
  t.meta("ensemble", "two-qubit Hilbert-Schmidt");
  t.meta("seed", fmt(static_cast<unsigned long long>(cfg.seed)));
  t.meta("inequality_tol", fmt(kInequalityTol));
  echo_options(t, cfg.opts);

  std::vector<DensityOperator> states;
  std::vector<std::string> ensemble;
  for (int i = 0; i < cfg.n_states; ++i) {
    Rng rng = task_rng(cfg.seed, static_cast<std::uint64_t>(i));
    states.push_back(random_density(Dims{2, 2}, rng));
    ensemble.emplace_back("ginibre");
  }
  if (cfg.cc_smoke) {
    Rng rng = task_rng(derive_seed(cfg.seed, 3), 0);
    states.push_back(classical_state(Dims{2, 2}, rng));
    ensemble.emplace_back("classical");
  }

  const std::size_t ni = indices.size();
  std::vector<TriangleReport> reports(states.size() * ni);
  const CorrelationOptions inner = serial(cfg.opts);
  kernels::for_each_task(static_cast<std::int64_t>(reports.size()), [&](std::int64_t task) {
    reports[task] = triangle_analysis(states[task / ni], indices[task % ni], inner);
  });

  int triangle = 0, sandwich = 0, ordering = 0, lower = 0, upper = 0;
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (std::size_t k = 0; k < ni; ++k) {
      const TriangleReport& r = reports[s * ni + k];
      triangle += !r.triangle_holds;
      sandwich += !r.dadb_holds;
      ordering += !r.ordering_holds;
      lower += !r.lower_bound_holds;
      upper += !r.upper_bound_holds;
      t.add_row({fmt(static_cast<int>(s)), ensemble[s], fmt(indices[k].q), fmt(indices[k].s),
                 fmt(r.m_a), fmt(r.m_b), fmt(r.m_ab), fmt(r.delta0), fmt(r.delta1),
                 fmt(r.triangle_holds), fmt(r.dadb_holds), fmt(r.ordering_holds),
                 fmt(r.lower_bound_holds), fmt(r.upper_bound_holds)});
    }
  }
  t.footer("rows: " + std::to_string(reports.size()));
  t.footer("violations: triangle=" + std::to_string(triangle) + " sandwich=" +
           std::to_string(sandwich) + " ordering=" + std::to_string(ordering) +
           " lower_bound=" + std::to_string(lower) + " upper_bound=" + std::to_string(upper));
  return t;
}

}  // namespace unicorr
