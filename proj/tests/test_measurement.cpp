#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "unicorr/measurement.hpp"
#include "unicorr/random.hpp"

using namespace unicorr;

namespace {

DensityOperator bell_state() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return pure_density(v, Dims{2, 2});
}

DensityOperator plus_state() {
  return pure_density(ComplexVector::Constant(2, 1.0 / std::sqrt(2.0)), Dims{2});
}

int side_code(Side s) { return s == Side::A ? 0 : s == Side::B ? 1 : 2; }

LocalMeasurement make(Side side, const ProjectiveBasis& a, const ProjectiveBasis& b) {
  switch (side) {
    case Side::A: return LocalMeasurement::on_a(a);
    case Side::B: return LocalMeasurement::on_b(b);
    case Side::AB: return LocalMeasurement::on_ab(a, b);
  }
  return LocalMeasurement::on_ab(a, b);
}

const std::vector<std::pair<double, double>> kGrid{{1, 1}, {2, 1}, {0.5, 1}, {3, 0.5}, {2, 0}, {0.7, -1}};

}  // namespace

TEST_SUITE("measurement") {

TEST_CASE("bases") {
  Rng rng = task_rng(21, 0);
  const ProjectiveBasis b{haar_unitary(3, rng)};
  ComplexMatrix sum = ComplexMatrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) sum += b.unitary.matrix.col(i) * b.unitary.matrix.col(i).adjoint();
  CHECK(max_abs_diff(sum, ComplexMatrix::Identity(3, 3)) < 1e-12);
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 1) = 0.3;
  CHECK_THROWS_AS(ProjectiveBasis::checked(bad), Error);
  CHECK(parse_side("AB") == Side::AB);
  CHECK_THROWS_AS(parse_side("C"), Error);
}

TEST_CASE("dephasing") {
  Rng rng = task_rng(21, 1);
  const DensityOperator rho = random_density(3, rng);
  const auto [sp, vec] = eig_hermitian(rho);
  CHECK(max_abs_diff(dephase(rho, ProjectiveBasis{vec}).matrix(), rho.matrix()) < 1e-12);
  CHECK(max_abs_diff(dephase(plus_state(), ProjectiveBasis::computational(2)).matrix(),
                     ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);
}

TEST_CASE("local measurements agree with explicit projectors") {
  Rng rng = task_rng(21, 2);
  for (int k = 0; k < 60; ++k) {
    const int na = 2 + k % 2, nb = 2 + (k / 2) % 2;
    const DensityOperator rho = random_density(Dims{na, nb}, rng);
    const ProjectiveBasis a{haar_unitary(na, rng)}, b{haar_unitary(nb, rng)};
    for (Side side : {Side::A, Side::B, Side::AB}) {
      const LocalMeasurement m = make(side, a, b);
      const ComplexMatrix ref =
          oracle::measure(rho.matrix(), na, nb, a.unitary.matrix, b.unitary.matrix, side_code(side));
      CHECK(max_abs_diff(apply_local(rho, m).matrix(), ref) < 1e-13);
      const std::vector<double> got = measured_spectrum(rho, m);
      const std::vector<double> ev = oracle::eigenvalues(ref);
      for (std::size_t i = 0; i < ev.size(); ++i) CHECK(std::abs(got[i] - std::max(ev[i], 0.0)) < 1e-13);
    }
  }
}

TEST_CASE("undisturbed states") {
  Rng rng = task_rng(21, 3);
  // CQ state sum_i p_i P_i (x) rho^{B|i}
  const Unitary u = haar_unitary(2, rng);
  ComplexMatrix cq = ComplexMatrix::Zero(6, 6);
  const double p[2] = {0.3, 0.7};
  for (int i = 0; i < 2; ++i) {
    cq += p[i] * kron(u.matrix.col(i) * u.matrix.col(i).adjoint(), random_density(3, rng).matrix());
  }
  const DensityOperator rho = make_density(cq, Dims{2, 3});
  CHECK(max_abs_diff(apply_local(rho, LocalMeasurement::on_a(ProjectiveBasis{u})).matrix(), cq) < 1e-14);

  const DensityOperator b = apply_local(
      bell_state(), LocalMeasurement::on_ab(ProjectiveBasis::computational(2), ProjectiveBasis::computational(2)));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 0.5;
  CHECK(max_abs_diff(b.matrix(), expected) < 1e-15);
}

TEST_CASE("conditional decompositions") {
  Rng rng = task_rng(21, 4);
  const DensityOperator ra = random_density(2, rng), rb = random_density(3, rng);
  const auto [sp, vec] = eig_hermitian(ra);
  const ConditionalDecomposition cd =
      conditional_decomposition(tensor(ra, rb), LocalMeasurement::on_a(ProjectiveBasis{vec}));
  for (int i = 0; i < 2; ++i) {
    CHECK(cd.probabilities[i] == doctest::Approx(sp.values[i]).epsilon(1e-12));
    REQUIRE(cd.conditionals[i].has_value());
    CHECK(max_abs_diff(cd.conditionals[i]->matrix(), rb.matrix()) < 1e-12);
  }

  const ConditionalDecomposition bd =
      conditional_decomposition(bell_state(), LocalMeasurement::on_a(ProjectiveBasis::computational(2)));
  CHECK(bd.probabilities[0] == doctest::Approx(0.5));
  CHECK(bd.probabilities[1] == doctest::Approx(0.5));
  CHECK(std::abs(bd.conditionals[0]->matrix()(0, 0).real() - 1.0) < 1e-15);
  CHECK(std::abs(bd.conditionals[1]->matrix()(1, 1).real() - 1.0) < 1e-15);

  // a product with a pure |0> on A measured in the computational basis has a
  // zero-probability outcome
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const ConditionalDecomposition zd = conditional_decomposition(
      tensor(make_density(zero, Dims{2}), rb), LocalMeasurement::on_a(ProjectiveBasis::computational(2)));
  CHECK_FALSE(zd.conditionals[1].has_value());

  for (int k = 0; k < 50; ++k) {
    const DensityOperator r = random_density(Dims{2, 2}, rng);
    const ConditionalDecomposition j = conditional_decomposition(
        r, LocalMeasurement::on_ab(ProjectiveBasis{haar_unitary(2, rng)}, ProjectiveBasis{haar_unitary(2, rng)}));
    double sum = 0.0;
    for (double v : j.probabilities) sum += v;
    CHECK(std::abs(sum - 1.0) < 1e-10);
  }
}

TEST_CASE("purity ratio") {
  Rng rng = task_rng(21, 5);
  const LocalMeasurement ab =
      LocalMeasurement::on_ab(ProjectiveBasis::computational(2), ProjectiveBasis::computational(2));
  CHECK(purity_ratio(bell_state(), ab, EntropicIndices::make(2, 1)) == doctest::Approx(0.5));
  for (int k = 0; k < 20; ++k) {
    const DensityOperator r = random_density(Dims{2, 2}, rng);
    const LocalMeasurement m = LocalMeasurement::on_a(ProjectiveBasis{haar_unitary(2, rng)});
    CHECK(purity_ratio(r, m, EntropicIndices::renyi(2.5)) == 1.0);
    const DensityOperator d = apply_local(r, m);
    CHECK(std::abs(purity_ratio(d, m, EntropicIndices::make(2, 1)) - 1.0) < 1e-12);
  }
}

TEST_CASE("disturbance against the oracle") {
  Rng rng = task_rng(21, 6);
  for (int k = 0; k < 60; ++k) {
    const int na = 2, nb = 2 + k % 2;
    const DensityOperator rho = random_density(Dims{na, nb}, rng);
    const ProjectiveBasis a{haar_unitary(na, rng)}, b{haar_unitary(nb, rng)};
    for (Side side : {Side::A, Side::B, Side::AB}) {
      const ComplexMatrix after =
          oracle::measure(rho.matrix(), na, nb, a.unitary.matrix, b.unitary.matrix, side_code(side));
      for (auto [q, s] : kGrid) {
        const DisturbanceReport rep = disturbance(rho, make(side, a, b), EntropicIndices::make(q, s));
        CHECK(std::abs(rep.disturbance - oracle::disturbance(rho.matrix(), after, q, s)) < 1e-11);
        CHECK(rep.disturbance >= -1e-10);
      }
    }
  }
}

TEST_CASE("disturbance worked values") {
  const DensityOperator plus = plus_state();
  const ProjectiveBasis comp = ProjectiveBasis::computational(2);
  const DisturbanceReport hs = disturbance(plus, comp, EntropicIndices::make(2, 1));
  CHECK(hs.disturbance == doctest::Approx(0.5).epsilon(1e-14));
  const double dist = hs_norm_sq(plus.matrix() - dephase(plus, comp).matrix());
  CHECK(std::abs(hs.disturbance - dist / hs_norm_sq(plus.matrix())) < 1e-14);

  const DisturbanceReport vn = disturbance(plus, comp, EntropicIndices::von_neumann());
  CHECK(vn.disturbance == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(std::abs(vn.disturbance - relative_entropy(plus, dephase(plus, comp))) < 1e-12);

  Rng rng = task_rng(21, 7);
  const DensityOperator r = random_density(3, rng);
  const auto [sp, vec] = eig_hermitian(r);
  for (auto [q, s] : kGrid) {
    CHECK(std::abs(disturbance(r, ProjectiveBasis{vec}, EntropicIndices::make(q, s)).disturbance) < 1e-12);
  }
}

TEST_CASE("dimension errors") {
  const DensityOperator b = bell_state();
  CHECK_THROWS_AS(apply_local(b, LocalMeasurement::on_a(ProjectiveBasis::computational(3))), Error);
  const DensityOperator single = plus_state();
  CHECK_THROWS_AS(apply_local(single, LocalMeasurement::on_a(ProjectiveBasis::computational(2))), Error);
  CHECK_THROWS_AS(dephase(b, ProjectiveBasis::computational(2)), Error);
}

}  // TEST_SUITE
