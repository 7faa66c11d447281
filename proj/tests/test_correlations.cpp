#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "unicorr/correlations.hpp"
#include "unicorr/families.hpp"
#include "unicorr/parametrization.hpp"
#include "unicorr/random.hpp"

using namespace unicorr;

namespace {

DensityOperator bell_state() { return pure_density(max_entangled(2), Dims{2, 2}); }

const std::vector<std::pair<double, double>> kGrid{{1, 1}, {2, 1}, {0.5, 1}, {3, 0.5}, {2, 0}};

CorrelationOptions quick(int restarts = 8) {
  CorrelationOptions o;
  o.restarts = restarts;
  return o;
}

DensityOperator cq_state(Rng& rng, int nb) {
  const Unitary u = haar_unitary(2, rng);
  ComplexMatrix m = ComplexMatrix::Zero(2 * nb, 2 * nb);
  m += 0.35 * kron(u.matrix.col(0) * u.matrix.col(0).adjoint(), random_density(nb, rng).matrix());
  m += 0.65 * kron(u.matrix.col(1) * u.matrix.col(1).adjoint(), random_density(nb, rng).matrix());
  return make_density(m, Dims{2, nb});
}

DensityOperator cc_state(Rng& rng) {
  const Unitary ua = haar_unitary(2, rng), ub = haar_unitary(2, rng);
  const double p[4] = {0.1, 0.2, 0.3, 0.4};
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m += p[2 * i + j] * kron(ua.matrix.col(i) * ua.matrix.col(i).adjoint(),
                               ub.matrix.col(j) * ub.matrix.col(j).adjoint());
  return make_density(m, Dims{2, 2});
}

}  // namespace

TEST_SUITE("correlations") {

TEST_CASE("product states carry no correlations") {
  Rng rng = task_rng(51, 0);
  for (int k = 0; k < 4; ++k) {
    const DensityOperator rho = tensor(random_density(2, rng), random_density(2 + k % 2, rng));
    for (auto [q, s] : kGrid)
      for (Side side : {Side::A, Side::B, Side::AB}) {
        const double m = measure_correlations(rho, side, EntropicIndices::make(q, s), quick()).value;
        CHECK(std::abs(m) < 1e-8);
      }
  }
}

TEST_CASE("Bell state equals the entanglement entropy") {
  for (Side side : {Side::A, Side::B, Side::AB}) {
    CHECK(std::abs(measure_correlations(bell_state(), side, EntropicIndices::von_neumann(), quick()).value -
                   std::log(2.0)) < 1e-6);
  }
  const DensityOperator pp = build(FamilySpec::pseudopure_max_entangled(2, 0.5));
  CHECK(std::abs(measure_correlations(pp, Side::AB, EntropicIndices::make(2, 1), quick()).value - 2.0 / 7.0) <
        1e-6);
}

TEST_CASE("pure states") {
  Rng rng = task_rng(51, 1);
  for (int k = 0; k < 6; ++k) {
    const Dims d = k % 2 ? Dims{2, 3} : Dims{2, 2};
    const ComplexVector psi = random_pure(d, rng);
    const DensityOperator rho = pure_density(psi, d);
    const std::vector<double> la = oracle::eigenvalues(oracle::trace_b(rho.matrix(), d[0], d[1]));
    for (auto [q, s] : kGrid) {
      const double expected = std::abs(q - 1) < 1e-8 ? oracle::von_neumann(la)
                              : std::abs(s) < 1e-8   ? oracle::renyi(la, q)
                                                     : oracle::unified(la, q, s);
      for (Side side : {Side::A, Side::B, Side::AB}) {
        CHECK(std::abs(measure_correlations(rho, side, EntropicIndices::make(q, s), quick()).value - expected) <
              1e-6);
      }
    }
  }
}

TEST_CASE("result is consistent with its argmin") {
  Rng rng = task_rng(51, 2);
  const DensityOperator rho = random_density(Dims{2, 3}, rng);
  for (Side side : {Side::A, Side::B, Side::AB}) {
    const EntropicIndices idx = EntropicIndices::make(2, 1);
    const CorrelationResult r = measure_correlations(rho, side, idx, quick());
    CHECK(r.converged);
    CHECK(r.restarts_used == 8);
    CHECK(std::abs(disturbance(rho, r.measurement, idx).disturbance - r.value) < 1e-12);
    const LocalMeasurement decoded = r.argmin.decode(2, 3);
    CHECK(std::abs(disturbance(rho, decoded, idx).disturbance - r.value) < 1e-9);
    // no random measurement beats the minimum
    for (int k = 0; k < 200; ++k) {
      const ProjectiveBasis a{haar_unitary(2, rng)}, b{haar_unitary(3, rng)};
      LocalMeasurement m{side, a, b};
      CHECK(disturbance(rho, m, idx).disturbance >= r.value - 1e-12);
    }
  }
}

TEST_CASE("same seed, same answer") {
  Rng rng = task_rng(51, 3);
  const DensityOperator rho = random_density(Dims{2, 2}, rng);
  const CorrelationResult a = measure_correlations(rho, Side::AB, EntropicIndices::make(3, 0.5), quick());
  const CorrelationResult b = measure_correlations(rho, Side::AB, EntropicIndices::make(3, 0.5), quick());
  CHECK(a.value == b.value);
  CHECK(a.argmin.angles_a == b.argmin.angles_a);
}

TEST_CASE("invalid options") {
  CorrelationOptions o;
  o.restarts = 0;
  CHECK_THROWS_AS(measure_correlations(bell_state(), Side::A, EntropicIndices::von_neumann(), o), Error);
  const DensityOperator single = make_density(ComplexMatrix::Identity(2, 2), Dims{2});
  CHECK_THROWS_AS(measure_correlations(single, Side::A, EntropicIndices::von_neumann()), Error);
}

TEST_CASE("grid oracle") {
  const GridResolution res{24, 48, 3};
  Rng rng = task_rng(51, 4);
  const DensityOperator prod = tensor(random_density(2, rng), random_density(2, rng));
  for (Side side : {Side::A, Side::AB}) {
    CHECK(std::abs(grid_oracle_qubit(prod, side, EntropicIndices::make(2, 1), res)) < 1e-4);
  }
  CHECK(std::abs(grid_oracle_qubit(bell_state(), Side::A, EntropicIndices::von_neumann(), res) - std::log(2.0)) <
        1e-4);
  for (int k = 0; k < 5; ++k) {
    const DensityOperator rho = random_density(Dims{2, 2}, rng);
    for (Side side : {Side::A, Side::B, Side::AB}) {
      const EntropicIndices idx = EntropicIndices::make(2, 1);
      const double grid = grid_oracle_qubit(rho, side, idx, GridResolution{16, 32, 4});
      const double opt = measure_correlations(rho, side, idx, quick()).value;
      CHECK(opt <= grid + 1e-9);
      CHECK(grid - opt < 1e-5);
    }
  }
  CHECK_THROWS_AS(grid_oracle_qubit(random_density(Dims{2, 3}, rng), Side::A, EntropicIndices::von_neumann()),
                  Error);
}

TEST_CASE("entanglement lower bound") {
  CHECK(entanglement_lower_bound(bell_state(), EntropicIndices::von_neumann()) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  const DensityOperator mixed = make_density(ComplexMatrix::Identity(4, 4), Dims{2, 2});
  CHECK(entanglement_lower_bound(mixed, EntropicIndices::von_neumann()) ==
        doctest::Approx(-std::log(2.0)).epsilon(1e-12));
  Rng rng = task_rng(51, 5);
  for (int k = 0; k < 10; ++k) {
    const DensityOperator rho = random_density(Dims{2, 2}, rng);
    for (auto [q, s] : kGrid) {
      const EntropicIndices idx = EntropicIndices::make(q, s);
      CHECK(entanglement_lower_bound(rho, idx) <= measure_correlations(rho, Side::A, idx, quick()).value + 1e-6);
    }
  }
}

TEST_CASE("bilocal decomposition") {
  Rng rng = task_rng(51, 6);
  const DensityOperator ra = random_density(2, rng), rb = random_density(2, rng);
  const auto [sa, va] = eig_hermitian(ra);
  const auto [sb, vb] = eig_hermitian(rb);
  const BilocalResiduals zero =
      bilocal_decomposition_check(tensor(ra, rb), ProjectiveBasis{va}, ProjectiveBasis{vb}, EntropicIndices::make(2, 1));
  CHECK(zero.a_first < 1e-12);
  CHECK(zero.b_first < 1e-12);

  for (int k = 0; k < 100; ++k) {
    const int nb = 2 + k % 2;
    const DensityOperator rho = random_density(Dims{2, nb}, rng);
    const ProjectiveBasis a{haar_unitary(2, rng)}, b{haar_unitary(nb, rng)};
    for (auto [q, s] : kGrid) {
      const EntropicIndices idx = EntropicIndices::make(q, s);
      const BilocalResiduals r = bilocal_decomposition_check(rho, a, b, idx);
      CHECK(r.a_first <= 1e-10);
      CHECK(r.b_first <= 1e-10);

      // sequential term from explicit projectors
      const ComplexMatrix pa = oracle::measure(rho.matrix(), 2, nb, a.unitary.matrix, b.unitary.matrix, 0);
      const ComplexMatrix pab = oracle::measure(pa, 2, nb, a.unitary.matrix, b.unitary.matrix, 1);
      double ratio = 1.0;
      if (std::abs(q - 1) > 1e-8 && std::abs(s) > 1e-8) {
        ratio = std::pow(oracle::power_trace(oracle::eigenvalues(pa), q) /
                             oracle::power_trace(oracle::eigenvalues(rho.matrix()), q),
                         s);
      }
      const double ref = ratio * oracle::disturbance(pa, pab, q, s);
      CHECK(std::abs(sequential_term(rho, LocalMeasurement::on_a(a), LocalMeasurement::on_b(b), idx) - ref) <
            1e-11);
    }
  }
}

TEST_CASE("triangle analysis on classical and semiclassical states") {
  Rng rng = task_rng(51, 7);
  const TriangleReport cc = triangle_analysis(cc_state(rng), EntropicIndices::make(2, 1), quick());
  CHECK(std::abs(cc.m_a) < 1e-8);
  CHECK(std::abs(cc.m_b) < 1e-8);
  CHECK(std::abs(cc.m_ab) < 1e-8);
  CHECK(std::abs(cc.delta0) < 1e-8);
  CHECK(std::abs(cc.delta1) < 1e-8);
  CHECK(cc.triangle_holds);
  CHECK(cc.dadb_holds);

  for (int k = 0; k < 3; ++k) {
    const DensityOperator cq = cq_state(rng, 2);
    for (auto [q, s] : kGrid) {
      const TriangleReport r = triangle_analysis(cq, EntropicIndices::make(q, s), quick());
      CHECK(std::abs(r.m_a) < 1e-8);
      CHECK(std::abs(r.delta1) < 1e-8);
      CHECK(std::abs(r.m_ab - r.m_b) < 1e-6);
    }
  }
}

TEST_CASE("triangle analysis on random states") {
  Rng rng = task_rng(51, 8);
  for (int k = 0; k < 20; ++k) {
    const DensityOperator rho = random_density(Dims{2, 2}, rng);
    const TriangleReport vn = triangle_analysis(rho, EntropicIndices::von_neumann(), quick());
    CHECK(vn.triangle_holds);
    CHECK(vn.ordering_holds);
    CHECK(vn.dadb_holds);
    CHECK(vn.lower_bound_holds);
    CHECK(vn.upper_bound_holds);
    const TriangleReport t = triangle_analysis(rho, EntropicIndices::make(0.5, 1), quick());
    CHECK(t.ordering_holds);
    CHECK(t.lower_bound_holds);
    CHECK(t.upper_bound_holds);
  }
}

TEST_CASE("contractivity probe") {
  Rng rng = task_rng(51, 9);
  const DensityOperator rho = random_density(Dims{2, 2}, rng);
  // a single trial against the oracle with the same random pair
  for (auto [q, s] : kGrid) {
    Rng trial = task_rng(77, 0);
    const ComplexMatrix ua = haar_unitary(2, trial).matrix, ub = haar_unitary(2, trial).matrix;
    const ComplexMatrix pa = oracle::measure(rho.matrix(), 2, 2, ua, ub, 0);
    const ComplexMatrix pb = oracle::measure(rho.matrix(), 2, 2, ua, ub, 1);
    const ComplexMatrix pab = oracle::measure(pb, 2, 2, ua, ub, 0);
    double ratio = 1.0;
    if (std::abs(q - 1) > 1e-8 && std::abs(s) > 1e-8) {
      ratio = std::pow(oracle::power_trace(oracle::eigenvalues(pb), q) /
                           oracle::power_trace(oracle::eigenvalues(rho.matrix()), q),
                       s);
    }
    const double ref = oracle::disturbance(rho.matrix(), pa, q, s) - ratio * oracle::disturbance(pb, pab, q, s);
    CHECK(std::abs(contractivity_probe(rho, EntropicIndices::make(q, s), 1, 77) - ref) < 1e-11);
  }
  for (int k = 0; k < 10; ++k) {
    const DensityOperator r = random_density(Dims{2, 2}, rng);
    CHECK(contractivity_probe(r, EntropicIndices::von_neumann(), 300, k) >= -1e-8);
    CHECK(contractivity_probe(r, EntropicIndices::tsallis(2), 300, k) >= -1e-8);
  }
  CHECK_THROWS_AS(contractivity_probe(rho, EntropicIndices::von_neumann(), 0, 1), Error);
}

}  // TEST_SUITE
