#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "modalent/errors.hpp"
#include "modalent/local_ops.hpp"
#include "support.hpp"

using namespace modalent;
using std::numbers::pi;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix diag3(Complex a, Complex b, Complex c) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

}  // namespace

TEST_CASE("Gell-Mann generators") {
  CHECK(max_abs(gell_mann(3).matrix() - diag3(1, -1, 0)) == 0.0);
  CHECK(max_abs(gell_mann(8).matrix() - diag3(1, 1, -2)) == 0.0);
  CHECK(max_abs((gell_mann(1) * gell_mann(1)).matrix() - diag3(1, 1, 0)) == 0.0);
  CHECK(max_abs((gell_mann(2) * gell_mann(2)).matrix() - diag3(1, 1, 0)) == 0.0);
  for (int k : {1, 2, 3, 8}) CHECK(std::abs(gell_mann(k).matrix().trace()) == 0.0);
  CHECK_THROWS_AS(gell_mann(4), Error);
}

TEST_CASE("matrix exponential closed forms") {
  CHECK(max_abs(matrix_exp(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)) == 0.0);
  const Complex w = std::polar(1.0, 2 * pi / 3);
  CHECK(max_abs(matrix_exp(Complex(0, 2 * pi / 3) * gell_mann(8).matrix()) - w * Matrix::Identity(3, 3)) < 1e-14);
  CHECK(max_abs(matrix_exp(Complex(0, pi) * gell_mann(3).matrix()) - diag3(-1, -1, 1)) < 1e-14);
  const double t = 0.83;
  Matrix rot = Matrix::Zero(3, 3);
  rot(0, 0) = std::cos(t);
  rot(0, 1) = std::sin(t);
  rot(1, 0) = -std::sin(t);
  rot(1, 1) = std::cos(t);
  rot(2, 2) = 1.0;
  // exp(t * i * lambda_2) is a real rotation
  CHECK(max_abs(matrix_exp(Complex(0, t) * gell_mann(2).matrix()) - rot) < 1e-14);
  CHECK_THROWS_AS(matrix_exp(diag3(NAN, 0, 0)), Error);
}

TEST_CASE("matrix exponential frozen value") {
  GellMannCoefficients c;
  c.l1 = {0.3, 0.2};
  c.l2 = {-0.1, 0.4};
  c.l3 = {0.25, -0.3};
  c.l8 = {0.05, 0.1};
  const Matrix e = exp_gell_mann(c).matrix();
  // frozen from scipy.linalg.expm
  Matrix ref = Matrix::Zero(3, 3);
  ref(0, 0) = {1.2667400637542559, -0.24480479690404147};
  ref(0, 1) = {0.6928717203255329, 0.36637276054624457};
  ref(1, 0) = {-0.1109519739097341, 0.09419355450121293};
  ref(1, 1) = {0.7036009845013249, 0.32873573980749676};
  ref(2, 2) = {0.8868009117972078, -0.1797634443195352};
  CHECK(max_abs(e - ref) < 1e-13);
  CHECK(std::abs(e.determinant() - 1.0) < 1e-13);
}

TEST_CASE("matrix exponential agrees with Eigen on random and large inputs") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int dim : {2, 3, 5, 8})
    for (int t = 0; t < 20; ++t) {
      Matrix a(dim, dim);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = Complex(n(rng), n(rng)) * (t < 10 ? 0.3 : 3.0);
      const Matrix ours = matrix_exp(a);
      const Matrix ref = a.exp();
      REQUIRE(max_abs(ours - ref) <= 1e-12 * std::max(1.0, max_abs(ref)));
    }
}

TEST_CASE("element construction examples") {
  const std::array<GellMannCoefficients, 3> zero{};
  const auto id = make_slocc_element(zero);
  for (int j = 0; j < 3; ++j) CHECK(max_abs(id.factor(j).matrix() - Matrix::Identity(3, 3)) == 0.0);

  const double a = 0.37;
  std::array<GellMannCoefficients, 3> c{};
  c[0].l3 = -3 * a;
  c[0].l8 = a;
  const auto g = make_slocc_element(c);
  CHECK(max_abs(g.factor(0).matrix() - diag3(std::exp(-2 * a), std::exp(4 * a), std::exp(-2 * a))) < 1e-13);
  CHECK(g.kind() == GroupKind::slocc);

  std::array<GellMannCoefficients, 3> im{};
  im[1].l1 = {0, 0.4};
  im[2].l2 = {0, -1.1};
  im[0].l8 = {0, 0.2};
  CHECK(make_slocc_element(im).kind() == GroupKind::su);

  const std::array<GellMannCoefficients, 2> two{};
  CHECK_THROWS_AS(make_slocc_element(two), Error);
}

TEST_CASE("apply agrees with the dense Kronecker oracle") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) {
    const auto g = random_element(t % 2 ? GroupKind::su : GroupKind::slocc, rng);
    const auto psi = random_state(three_mode_shape(), rng);
    const Eigen::VectorXcd expect = testing_support::kron3(g) * testing_support::to_tensor(psi);
    const Eigen::VectorXcd got = testing_support::to_tensor(apply(g, psi));
    REQUIRE((got - expect).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("apply rejects mismatched or non-compliant elements") {
  const auto psi = psi1();
  CHECK_THROWS_AS(apply(GroupElement::identity(SystemShape(4, 2, 1)), psi), Error);
  Matrix mix = Matrix::Identity(3, 3);
  mix(0, 2) = 0.5;
  const auto bad = GroupElement::on_mode(three_mode_shape(), 1, LocalOperator(mix));
  CHECK_FALSE(bad.is_superselection_compliant());
  try {
    apply(bad, psi);
    FAIL("expected a superselection error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::superselection_violation);
  }
  CHECK(bad.kind() == GroupKind::neither);
}

TEST_CASE("composition matches sequential application") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const auto g = random_element(GroupKind::slocc, rng);
    const auto h = random_element(GroupKind::slocc, rng);
    const auto psi = random_state(three_mode_shape(), rng);
    REQUIRE((apply(g, apply(h, psi)) - apply(g.compose(h), psi)).norm() < 1e-10);
  }
}

TEST_CASE("identity leaves the state untouched") {
  const auto psi = testing_support::frozen_state();
  CHECK((apply(GroupElement::identity(psi.shape()), psi) - psi).norm() == 0.0);
}

TEST_CASE("vacancy scaling on four modes multiplies by r^-2 e^-2i phi") {
  const SystemShape shape(4, 2, 1);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const double r = testing_support::uniform(rng, 0.3, 2.5);
    const double phi = testing_support::uniform(rng, -3, 3);
    const auto g = vacancy_scaling(r, phi);
    CHECK(std::abs(g.determinant() - 1.0) < 1e-12);
    const GroupElement all(std::vector<LocalOperator>(4, g));
    const auto psi = random_state(shape, rng);
    const Complex factor = std::pow(r, -2.0) * std::polar(1.0, -2 * phi);
    REQUIRE((apply(all, psi) - psi.scaled(factor)).norm() < 1e-10);
  }
  CHECK(max_abs(vacancy_scaling(1.0, 0.0).matrix() - Matrix::Identity(3, 3)) == 0.0);
  CHECK_THROWS_AS(vacancy_scaling(0.0, 0.0), Error);
  CHECK_THROWS_AS(vacancy_scaling(-1.0, 0.0), Error);
}

TEST_CASE("general vacancy scaling exponent") {
  std::mt19937_64 rng(4);
  for (int n = 2; n <= 5; ++n)
    for (int p = 0; p <= 3; ++p) {
      const double r = 1.3, phi = 0.4;
      const auto g = vacancy_scaling(r, phi, p);
      REQUIRE(std::abs(g.determinant() - 1.0) < 1e-12);
      const GroupElement all(std::vector<LocalOperator>(static_cast<std::size_t>(n), g));
      for (int m = 0; m <= n; ++m) {
        const SystemShape shape(n, m, p);
        const auto basis = enumerate_basis(shape);
        const auto& seq = basis[std::uniform_int_distribution<std::size_t>(0, basis.size() - 1)(rng)];
        const int e = (p + 2) * m - (p + 1) * n;
        const auto out = apply(all, basis_state(shape, seq));
        REQUIRE(std::abs(out.amplitude(seq) - std::pow(r, e) * std::polar(1.0, e * phi)) < 1e-10 * std::pow(r, std::abs(e)));
      }
    }
}

TEST_CASE("level contraction") {
  for (int p = 1; p <= 3; ++p) {
    const auto g = level_contraction(Complex(0, 0.7), p);
    CHECK(g.is_unitary());
    CHECK(std::abs(g.determinant() - 1.0) < 1e-12);
    CHECK(g.is_superselection_compliant());
    CHECK(std::abs(level_contraction(Complex(0.4, 0.1), p).determinant() - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(level_contraction(0.1, 0), Error);
}

TEST_CASE("random elements are reproducible and well formed") {
  std::mt19937_64 a(99), b(99);
  const auto ga = random_element(GroupKind::slocc, a);
  const auto gb = random_element(GroupKind::slocc, b);
  for (int j = 0; j < 3; ++j) CHECK(max_abs(ga.factor(j).matrix() - gb.factor(j).matrix()) == 0.0);

  std::mt19937_64 rng(1);
  for (int t = 0; t < 1000; ++t) {
    const auto g = random_element(GroupKind::slocc, rng, 0.5);
    for (const auto& f : g.factors()) REQUIRE(f.has_unit_determinant(1e-9));
    REQUIRE(g.kind() != GroupKind::neither);
  }
  for (int t = 0; t < 100; ++t) {
    const auto g = random_element(GroupKind::su, rng, 0.8);
    REQUIRE(g.kind() == GroupKind::su);
    for (const auto& f : g.factors()) REQUIRE(f.is_unitary(1e-10));
  }
  for (int p = 0; p <= 3; ++p) {
    const auto g = random_element(GroupKind::su, rng, 0.5, SystemShape(4, 3, p));
    REQUIRE(g.modes() == 4);
    REQUIRE(g.kind() == GroupKind::su);
  }
  CHECK_THROWS_AS(random_element(GroupKind::su, rng, 0.0), Error);
}

TEST_CASE("lambda_8 phase acts globally") {
  const auto g8 = GroupElement::on_mode(three_mode_shape(), 1,
                                        matrix_exp(LocalOperator(Complex(0, 2 * pi / 3) * gell_mann(8).matrix())));
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto psi = random_state(three_mode_shape(), rng);
    REQUIRE(std::abs(global_phase_between(psi, apply(g8, psi)) - std::polar(1.0, 2 * pi / 3)) < 1e-12);
  }
}

TEST_CASE("special unitary elements preserve the norm") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const auto g = random_element(GroupKind::su, rng, 1.0);
    const auto psi = random_state(three_mode_shape(), rng);
    REQUIRE(std::abs(apply(g, psi).norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("kind tags") {
  CHECK(to_string(GroupKind::slocc) == "SLOCC");
  const auto scaled = GroupElement::on_mode(three_mode_shape(), 0, LocalOperator(2.0 * Matrix::Identity(3, 3)));
  CHECK(scaled.kind() == GroupKind::neither);
}
