#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unicorr/correlations.hpp"
#include "unicorr/csv.hpp"
#include "unicorr/families.hpp"

namespace unicorr {

// A contractivity difference below -kViolationTol counts as a violation.
inline constexpr double kViolationTol = 1e-6;
inline constexpr double kAncillaTol = 1e-6;
inline constexpr std::uint64_t kDefaultSeed = 20240611ULL;

CsvTable run_entropy(const DensityOperator& rho, const std::vector<EntropicIndices>& indices);

CsvTable run_measure(const DensityOperator& rho, Side side, const EntropicIndices& idx,
                     const CorrelationOptions& opts);

struct FamilyCurveConfig {
  FamilyKind kind = FamilyKind::Pseudopure;
  int n = 2;
  EntropicIndices idx = EntropicIndices::von_neumann();
  std::vector<double> grid;  // empty: 11 evenly spaced points over the family range
  CorrelationOptions opts;
};

// Side-AB optimizer against the closed form. Pseudopure uses the maximally
// entangled N x N vector; Werner rows add the published expression.
CsvTable run_family_curve(const FamilyCurveConfig& cfg);

struct Fig1Config {
  std::vector<double> q_list;  // empty: 0.1, 0.2, ..., 6.0
  int n_states = 20;
  int n_measurements = 1000;
  bool tsallis = true;
  bool renyi = true;
  std::uint64_t seed = kDefaultSeed;
};

std::vector<double> default_fig1_grid();

// Two-qubit Hilbert-Schmidt random states drawn for the contractivity sweep.
std::vector<DensityOperator> fig1_states(int n_states, std::uint64_t seed);

// Rows ordered by (state_id, family, q).
CsvTable run_fig1(const Fig1Config& cfg);

struct AncillaConfig {
  Dims dims{2, 2};
  int ancilla_dim = 2;
  EntropicIndices idx = EntropicIndices::tsallis(2.0);
  Side side = Side::A;  // A or B
  int samples = 20;
  // every pure_every-th sample uses a pure ancilla; 0 disables
  int pure_every = 4;
  std::uint64_t seed = kDefaultSeed;
  CorrelationOptions opts;
};

CsvTable run_ancilla_check(const AncillaConfig& cfg);

struct TriangleScanConfig {
  int n_states = 200;
  std::vector<EntropicIndices> indices;  // empty: default_triangle_indices()
  bool cc_smoke = true;  // append a classical-classical state
  std::uint64_t seed = kDefaultSeed;
  CorrelationOptions opts;
};

std::vector<EntropicIndices> default_triangle_indices();

CsvTable run_triangle_scan(const TriangleScanConfig& cfg);

}  // namespace unicorr
