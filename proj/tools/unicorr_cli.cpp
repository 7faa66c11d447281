#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unicorr/experiments.hpp"
#include "unicorr/state_io.hpp"

using namespace unicorr;

namespace {

struct StateFlags {
  std::string state_file;
  std::string family;
  int n = 2;
  double p = 0.0, x = 0.0, y = 1.0;
};

struct CommonFlags {
  std::vector<double> q{1.0};
  std::vector<double> s{1.0};
  std::string side = "A";
  std::vector<int> dims{2, 2};
  std::uint64_t seed = kDefaultSeed;
  int trials = -1;
  int restarts = 32;
  std::string out;
};

void add_state_flags(CLI::App* cmd, StateFlags& f) {
  cmd->add_option("--state-file", f.state_file, "State file (dims header and matrix entries)");
  cmd->add_option("--family", f.family, "pseudopure, isotropic or werner")
      ->check(CLI::IsMember({"pseudopure", "isotropic", "werner"}));
  cmd->add_option("--N", f.n, "Local dimension of the family state");
  cmd->add_option("--p", f.p, "Pseudopure mixing parameter");
  cmd->add_option("--x", f.x, "Werner parameter");
  cmd->add_option("--y", f.y, "Isotropic fidelity");
}

DensityOperator load_state(const StateFlags& f) {
  if (!f.state_file.empty() && !f.family.empty()) {
    throw Error(ErrorCode::BadParameter, "give either --state-file or --family, not both");
  }
  if (!f.state_file.empty()) return read_state_file(f.state_file);
  if (f.family.empty()) throw Error(ErrorCode::BadParameter, "no state given");
  switch (parse_family(f.family)) {
    case FamilyKind::Pseudopure: return build(FamilySpec::pseudopure_max_entangled(f.n, f.p));
    case FamilyKind::Isotropic: return build(FamilySpec::isotropic(f.n, f.y));
    case FamilyKind::Werner: return build(FamilySpec::werner(f.n, f.x));
  }
  throw Error(ErrorCode::BadKind, "unknown family");
}

EntropicIndices single_index(const CommonFlags& c) {
  if (c.q.size() != 1 || c.s.size() != 1) {
    throw Error(ErrorCode::BadParameter, "this command takes a single --q and --s");
  }
  return EntropicIndices::make(c.q[0], c.s[0]);
}

// Cartesian product of the --q and --s lists.
std::vector<EntropicIndices> index_grid(const CommonFlags& c) {
  std::vector<EntropicIndices> out;
  for (double s : c.s)
    for (double q : c.q) out.push_back(EntropicIndices::make(q, s));
  return out;
}

CorrelationOptions optimizer(const CommonFlags& c) {
  CorrelationOptions o;
  if (c.restarts < 1) throw Error(ErrorCode::BadParameter, "--restarts must be >= 1");
  o.restarts = c.restarts;
  o.seed = c.seed;
  return o;
}

void emit(const CsvTable& t, const std::string& path) {
  if (path.empty() || path == "-") {
    t.write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path);
  t.write(out);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

void add_common(CLI::App* cmd, CommonFlags& c, bool lists) {
  if (lists) {
    cmd->add_option("--q", c.q, "Entropic index q (list)")->delimiter(',');
    cmd->add_option("--s", c.s, "Entropic index s (list)")->delimiter(',');
  } else {
    cmd->add_option("--q", c.q, "Entropic index q")->expected(1);
    cmd->add_option("--s", c.s, "Entropic index s")->expected(1);
  }
  cmd->add_option("--out", c.out, "Output CSV path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic correlation measures based on unified (q,s)-entropies"};
  app.require_subcommand(1);

  CommonFlags c;
  StateFlags st;
  int n_states = -1;
  int ancilla_dim = 2;
  std::string entropy_family = "both";
  std::vector<double> grid;
  bool no_cc = false;

  auto* entropy = app.add_subcommand("entropy", "Unified entropy of a state");
  add_common(entropy, c, true);
  add_state_flags(entropy, st);

  auto* measure = app.add_subcommand("measure", "Minimized disturbance on one side");
  add_common(measure, c, false);
  add_state_flags(measure, st);
  measure->add_option("--side", c.side, "A, B or AB")->check(CLI::IsMember({"A", "B", "AB"}));
  measure->add_option("--restarts", c.restarts, "Optimizer restarts");
  measure->add_option("--seed", c.seed, "Optimizer seed");

  auto* curve = app.add_subcommand("family-curve", "Closed form against optimizer");
  add_common(curve, c, false);
  curve->add_option("--family", st.family, "pseudopure, isotropic or werner")
      ->required()
      ->check(CLI::IsMember({"pseudopure", "isotropic", "werner"}));
  curve->add_option("--N", st.n, "Local dimension");
  curve->add_option("--grid", grid, "Parameter values")->delimiter(',');
  curve->add_option("--restarts", c.restarts, "Optimizer restarts");
  curve->add_option("--seed", c.seed, "Optimizer seed");

  auto* fig1 = app.add_subcommand("fig1", "Local contractivity sweep over random states");
  fig1->add_option("--q", c.q, "q grid (default 0.1..6.0 step 0.1)")->delimiter(',');
  fig1->add_option("--states", n_states, "Number of random states (default 20)");
  fig1->add_option("--trials", c.trials, "Random measurement pairs per state (default 1000)");
  fig1->add_option("--entropy-family", entropy_family, "tsallis, renyi or both")
      ->check(CLI::IsMember({"tsallis", "renyi", "both"}));
  fig1->add_option("--seed", c.seed, "Master seed");
  fig1->add_option("--out", c.out, "Output CSV path (default stdout)");

  auto* ancilla = app.add_subcommand("ancilla-check", "Invariance under an appended ancilla");
  add_common(ancilla, c, false);
  ancilla->add_option("--dims", c.dims, "Dimensions of the measured state")->delimiter(',');
  ancilla->add_option("--ancilla-dim", ancilla_dim, "Ancilla dimension");
  ancilla->add_option("--side", c.side, "A or B")->check(CLI::IsMember({"A", "B"}));
  ancilla->add_option("--trials", c.trials, "Number of samples (default 20)");
  ancilla->add_option("--restarts", c.restarts, "Optimizer restarts");
  ancilla->add_option("--seed", c.seed, "Master seed");

  auto* triangle = app.add_subcommand("triangle-scan", "Triangle, sandwich and ordering checks");
  add_common(triangle, c, true);
  triangle->add_option("--trials", c.trials, "Number of random states (default 200)");
  triangle->add_option("--restarts", c.restarts, "Optimizer restarts");
  triangle->add_option("--seed", c.seed, "Master seed");
  triangle->add_flag("--no-cc", no_cc, "Skip the classical smoke state");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (entropy->parsed()) {
      emit(run_entropy(load_state(st), index_grid(c)), c.out);
    } else if (measure->parsed()) {
      emit(run_measure(load_state(st), parse_side(c.side), single_index(c), optimizer(c)), c.out);
    } else if (curve->parsed()) {
      FamilyCurveConfig cfg;
      cfg.kind = parse_family(st.family);
      cfg.n = st.n;
      cfg.idx = single_index(c);
      cfg.grid = grid;
      cfg.opts = optimizer(c);
      emit(run_family_curve(cfg), c.out);
    } else if (fig1->parsed()) {
      Fig1Config cfg;
      if (fig1->count("--q") > 0) cfg.q_list = c.q;
      if (n_states > 0) cfg.n_states = n_states;
      if (c.trials > 0) cfg.n_measurements = c.trials;
      cfg.tsallis = entropy_family != "renyi";
      cfg.renyi = entropy_family != "tsallis";
      cfg.seed = c.seed;
      emit(run_fig1(cfg), c.out);
    } else if (ancilla->parsed()) {
      AncillaConfig cfg;
      cfg.dims = c.dims;
      cfg.ancilla_dim = ancilla_dim;
      cfg.idx = single_index(c);
      cfg.side = parse_side(c.side);
      if (c.trials > 0) cfg.samples = c.trials;
      cfg.seed = c.seed;
      cfg.opts = optimizer(c);
      emit(run_ancilla_check(cfg), c.out);
    } else if (triangle->parsed()) {
      TriangleScanConfig cfg;
      if (c.trials > 0) cfg.n_states = c.trials;
      if (triangle->count("--q") > 0 || triangle->count("--s") > 0) cfg.indices = index_grid(c);
      cfg.cc_smoke = !no_cc;
      cfg.seed = c.seed;
      cfg.opts = optimizer(c);
      emit(run_triangle_scan(cfg), c.out);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", std::string(to_string(e.code())).c_str(), e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
