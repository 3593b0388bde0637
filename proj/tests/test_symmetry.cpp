#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "modalent/classification.hpp"
#include "modalent/errors.hpp"
#include "modalent/symmetry.hpp"
#include "support.hpp"

using namespace modalent;
using std::numbers::pi;

namespace {

bool has_phase(const std::vector<Complex>& set, Complex c) {
  for (auto z : set)
    if (std::abs(z - c) < 1e-9) return true;
  return false;
}

void require_unitary_compliant(const StabilizerElement& e) {
  REQUIRE(e.element.is_superselection_compliant());
  for (const auto& f : e.element.factors()) REQUIRE(f.is_unitary(1e-10));
  REQUIRE(std::abs(std::abs(e.declared_prefactor) - 1.0) < 1e-12);
}

}  // namespace

TEST_CASE("generic element with zero parameters is the identity") {
  const auto e = generic_stabilizer(0.0, 0);
  for (const auto& f : e.element.factors()) CHECK((f.matrix() - Matrix::Identity(3, 3)).norm() < 1e-15);
}

TEST_CASE("generic element stabilizes canonical-form states") {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<long> mi(-5, 5);
  for (int s = 0; s < 30; ++s) {
    const auto psi = testing_support::random_canonical_form_state(rng);
    for (int t = 0; t < 10; ++t) {
      const auto e = generic_stabilizer(testing_support::uniform(rng, -pi, pi), mi(rng));
      require_unitary_compliant(e);
      const auto c = verify_stabilizes(e, psi);
      REQUIRE(c.stabilizes);
      REQUIRE(std::abs(c.net_phase - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("generic element stabilizes arbitrary states too") {
  // the element acts as a unit phase on each two-particle sector
  std::mt19937_64 rng(62);
  for (int t = 0; t < 20; ++t) {
    const auto psi = random_state(three_mode_shape(), rng);
    REQUIRE(verify_stabilizes(generic_stabilizer(testing_support::uniform(rng, -3, 3), 2), psi).stabilizes);
  }
}

TEST_CASE("a non-stabilizing element is detected") {
  std::mt19937_64 rng(63);
  const auto psi = random_state(three_mode_shape(), rng);
  StabilizerElement e{GroupElement::on_mode(three_mode_shape(), 1,
                                            exp_gell_mann({0.0, Complex(0.0, 0.6), 0.0, 0.0})),
                      1.0};
  const auto c = verify_stabilizes(e, psi);
  CHECK_FALSE(c.stabilizes);
  CHECK_FALSE(c.phase.has_value());
  CHECK(c.residual > 1e-3);
}

TEST_CASE("nonlocal_ac group stabilizes its family") {
  std::mt19937_64 rng(64);
  for (int t = 0; t < 100; ++t) {
    const auto psi = testing_support::random_nonlocal_ac(rng);
    const auto e = nonlocal_ac_stabilizer(testing_support::uniform(rng, -pi, pi), testing_support::uniform(rng, -pi, pi),
                                          testing_support::uniform(rng, -pi, pi));
    require_unitary_compliant(e);
    const auto c = verify_stabilizes(e, psi);
    REQUIRE(c.stabilizes);
  }
}

TEST_CASE("nonlocal_ac probes induce a continuum of phases") {
  std::mt19937_64 rng(65);
  const auto psi = testing_support::random_nonlocal_ac(rng);
  std::vector<double> alphas;
  for (int k = 0; k < 16; ++k) alphas.push_back(2 * pi * k / 16);
  const auto probes = nonlocal_ac_probes(alphas);
  const auto phases = topological_phases(psi, probes);
  CHECK(phases.size() == 16);
  for (double a : alphas) CHECK(has_phase(phases, std::polar(1.0, -a)));
}

TEST_CASE("psi2 group stabilizes psi2; the printed form does not") {
  std::mt19937_64 rng(66);
  int literal_fail = 0;
  for (int t = 0; t < 100; ++t) {
    const double a = testing_support::uniform(rng, -pi, pi), b = testing_support::uniform(rng, -pi, pi),
                 g = testing_support::uniform(rng, -pi, pi), d = testing_support::uniform(rng, -pi, pi);
    const auto e = psi2_stabilizer(a, b, g, d);
    require_unitary_compliant(e);
    const auto c = verify_stabilizes(e, psi2());
    REQUIRE(c.stabilizes);
    REQUIRE(std::abs(c.net_phase - 1.0) < 1e-9);
    if (!verify_stabilizes(psi2_stabilizer_literal(a, b, g, d), psi2()).stabilizes) ++literal_fail;
  }
  CHECK(literal_fail > 90);
  // the two readings agree when delta = 0
  CHECK(verify_stabilizes(psi2_stabilizer_literal(0.3, 0.2, -0.4, 0.0), psi2()).stabilizes);
}

TEST_CASE("psi1 listed elements stabilize psi1") {
  const auto psi = psi1();
  const auto flip = psi1_flip_stabilizer();
  require_unitary_compliant(flip);
  const auto fc = verify_stabilizes(flip, psi);
  CHECK(fc.stabilizes);
  CHECK(std::abs(fc.net_phase - 1.0) < 1e-9);
  std::mt19937_64 rng(67);
  for (int t = 0; t < 20; ++t) {
    const auto r = psi1_rotation_stabilizer(testing_support::uniform(rng, -pi, pi));
    require_unitary_compliant(r);
    REQUIRE(verify_stabilizes(r, psi).stabilizes);
  }
  std::uniform_int_distribution<long> iv(-3, 3);
  for (int t = 0; t < 200; ++t) {
    Psi1Integers v;
    for (auto& x : v) x = iv(rng);
    const auto e = psi1_diagonal_stabilizer(v, testing_support::uniform(rng, -pi, pi));
    require_unitary_compliant(e);
    const auto c = verify_stabilizes(e, psi);
    REQUIRE(c.stabilizes);
    REQUIRE(std::abs(c.net_phase - 1.0) < 1e-9);
  }
}

TEST_CASE("printed psi1 diagonal family fails exactly for odd q") {
  const std::array<double, 2> alphas = {0.0, 0.9};
  const auto failures = diagnose_psi1_literal(1, alphas);
  // 3^5 tuples with q = +-1, two alphas each
  CHECK(failures.size() == 2 * 243 * 2);
  for (const auto& f : failures) {
    REQUIRE(std::abs(f.ints[5]) % 2 == 1);
    // the sectors pick up different signs, so no global phase exists
    REQUIRE(f.net_phase == Complex(0.0));
  }
  CHECK_THROWS_AS(diagnose_psi1_literal(5, alphas), Error);
}

TEST_CASE("lambda_8 probe gives the cube-root phase on any state") {
  std::mt19937_64 rng(68);
  for (int t = 0; t < 20; ++t) {
    const auto psi = random_state(three_mode_shape(), rng);
    const std::array<GroupElement, 1> probe = {lambda8_probe(t % 3)};
    const auto phases = topological_phases(psi, probe);
    REQUIRE(phases.size() == 1);
    REQUIRE(std::abs(phases[0] - std::polar(1.0, 2 * pi / 3)) < 1e-12);
  }
}

TEST_CASE("psi1 probes reach the sixth-root phase") {
  const auto probes = psi1_probes();
  const auto phases = topological_phases(psi1(), probes);
  CHECK(has_phase(phases, std::polar(1.0, pi / 3)));
  CHECK(has_phase(phases, std::polar(1.0, 2 * pi / 3)));
  CHECK(has_phase(phases, std::polar(1.0, -pi / 3)));
  for (auto z : phases) {
    const double k = std::arg(z) / (pi / 3);
    CHECK(std::abs(k - std::round(k)) < 1e-9);
  }
}

TEST_CASE("lambda_8 representation ambiguity") {
  const auto a = diagonal_su3(0.4, 0.7 + 2 * pi / 3);
  const auto b = diagonal_su3(0.4, 0.7);
  CHECK((a.matrix() - std::polar(1.0, 2 * pi / 3) * b.matrix()).norm() < 1e-14);
  const auto e8 = matrix_exp(LocalOperator(Complex(0, 2 * pi / 3) * gell_mann(8).matrix()));
  CHECK((e8.matrix() - std::polar(1.0, 2 * pi / 3) * Matrix::Identity(3, 3)).norm() < 1e-14);
}

TEST_CASE("named stabilizer lookup") {
  CHECK(stabilizer_names().size() == 8);
  const auto e = stabilizer("psi2", {{"alpha", 0.1}, {"beta", 0.2}, {"gamma", 0.3}, {"delta", 0.4}});
  CHECK(verify_stabilizes(e, psi2()).stabilizes);
  CHECK_THROWS_AS(stabilizer("generic", {{"alpha", 0.1}, {"m", 0.5}}), Error);
  CHECK_THROWS_AS(stabilizer("generic", {{"alpha", 0.1}}), Error);
  CHECK_THROWS_AS(stabilizer("eq13", {}), Error);
  CHECK_THROWS_AS(verify_stabilizes(e, StateVector(SystemShape(4, 2, 1))), Error);
}
