#include "modalent/symmetry.hpp"

#include <cmath>
#include <numbers>

#include "modalent/classification.hpp"
#include "modalent/errors.hpp"

namespace modalent {

namespace {

constexpr double kPi = std::numbers::pi;

Complex phase(double a) { return std::polar(1.0, a); }

StabilizerElement psi1_diagonal_impl(const Psi1Integers& v, double alpha, bool literal) {
  const double k = v[0], l = v[1], m = v[2], n = v[3], p = v[4], q = v[5];
  const double a_bracket = literal ? k - l - m + n + p + q : k - l - m + n + p - q;
  const LocalOperator a = diagonal_su3(kPi / 2 * a_bracket, alpha);
  const LocalOperator b = diagonal_su3(kPi / 2 * (k - l + m - n - p + q), alpha + kPi / 3 * (-m - n + p + q));
  const LocalOperator c = diagonal_su3(kPi / 2 * (-k + l - m + n - p + q), alpha + kPi / 3 * (-k - l + p + q));
  return {GroupElement({a, b, c}), phase(kPi / 3 * (k + l + m + n + p + q))};
}

double get(const std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw Error(ErrorKind::invalid_argument, "missing parameter '" + key + "'");
  if (!std::isfinite(it->second)) throw Error(ErrorKind::non_finite, "parameter '" + key + "'");
  return it->second;
}

long get_int(const std::map<std::string, double>& params, const std::string& key) {
  const double x = get(params, key);
  if (x != std::round(x) || std::abs(x) > 1e9)
    throw Error(ErrorKind::invalid_argument, "parameter '" + key + "' must be an integer");
  return static_cast<long>(x);
}

}  // namespace

LocalOperator diagonal_su3(double a, double b) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = phase(a + b);
  m(1, 1) = phase(-a + b);
  m(2, 2) = phase(-2.0 * b);
  return LocalOperator(std::move(m));
}

StabilizerElement generic_stabilizer(double alpha, long m) {
  const double mm = static_cast<double>(m);
  return {GroupElement({diagonal_su3(kPi * mm, alpha), diagonal_su3(0.0, alpha + kPi / 3 * mm),
                        diagonal_su3(0.0, alpha - kPi / 3 * mm)}),
          Complex(1.0, 0.0)};
}

StabilizerElement nonlocal_ac_stabilizer(double alpha, double beta, double gamma) {
  return {GroupElement({diagonal_su3(beta, gamma), diagonal_su3(1.5 * alpha, beta / 3 + gamma + alpha / 2),
                        diagonal_su3(0.0, -beta / 3 + gamma)}),
          phase(alpha)};
}

StabilizerElement psi1_diagonal_stabilizer(const Psi1Integers& ints, double alpha) {
  return psi1_diagonal_impl(ints, alpha, false);
}

StabilizerElement psi1_diagonal_stabilizer_literal(const Psi1Integers& ints, double alpha) {
  return psi1_diagonal_impl(ints, alpha, true);
}

StabilizerElement psi1_flip_stabilizer() {
  const LocalOperator f = exp_gell_mann({Complex(0.0, kPi / 2), 0.0, 0.0, 0.0});
  return {GroupElement({f, f, f}), phase(kPi)};
}

StabilizerElement psi1_rotation_stabilizer(double beta) {
  const LocalOperator r = exp_gell_mann({0.0, Complex(0.0, beta), 0.0, 0.0});
  return {GroupElement({r, r, r}), Complex(1.0, 0.0)};
}

StabilizerElement psi2_stabilizer(double alpha, double beta, double gamma, double delta) {
  return {GroupElement({diagonal_su3(alpha, beta), diagonal_su3(gamma, (3 * beta - alpha + gamma - 2 * delta) / 3),
                        diagonal_su3(delta, (3 * beta + alpha + 2 * gamma - delta) / 3)}),
          Complex(1.0, 0.0)};
}

StabilizerElement psi2_stabilizer_literal(double alpha, double beta, double gamma, double delta) {
  return {GroupElement({diagonal_su3(alpha, beta), diagonal_su3(gamma, (3 * beta - alpha + gamma + delta) / 3),
                        diagonal_su3(delta, (3 * beta + alpha + 2 * gamma + delta) / 3)}),
          Complex(1.0, 0.0)};
}

std::vector<std::string_view> stabilizer_names() {
  return {"generic", "nonlocal_ac", "psi1_diagonal", "psi1_diagonal_literal", "psi1_flip", "psi1_rotation",
          "psi2", "psi2_literal"};
}

StabilizerElement stabilizer(std::string_view name, const std::map<std::string, double>& p) {
  auto ints = [&] {
    return Psi1Integers{get_int(p, "k"), get_int(p, "l"), get_int(p, "m"),
                        get_int(p, "n"), get_int(p, "p"), get_int(p, "q")};
  };
  if (name == "generic") return generic_stabilizer(get(p, "alpha"), get_int(p, "m"));
  if (name == "nonlocal_ac") return nonlocal_ac_stabilizer(get(p, "alpha"), get(p, "beta"), get(p, "gamma"));
  if (name == "psi1_diagonal") return psi1_diagonal_stabilizer(ints(), get(p, "alpha"));
  if (name == "psi1_diagonal_literal") return psi1_diagonal_stabilizer_literal(ints(), get(p, "alpha"));
  if (name == "psi1_flip") return psi1_flip_stabilizer();
  if (name == "psi1_rotation") return psi1_rotation_stabilizer(get(p, "beta"));
  if (name == "psi2") return psi2_stabilizer(get(p, "alpha"), get(p, "beta"), get(p, "gamma"), get(p, "delta"));
  if (name == "psi2_literal")
    return psi2_stabilizer_literal(get(p, "alpha"), get(p, "beta"), get(p, "gamma"), get(p, "delta"));
  throw Error(ErrorKind::invalid_argument, "unknown stabilizer '" + std::string(name) + "'");
}

StabilizerCheck verify_stabilizes(const StabilizerElement& e, const StateVector& state, double tol) {
  if (e.element.modes() != state.shape().modes())
    throw Error(ErrorKind::shape_mismatch, "stabilizer element vs state");
  const StateVector moved = apply(e.element, state);
  StabilizerCheck out;
  out.phase = phase_if_equal(state, moved, tol);
  if (out.phase) {
    out.net_phase = *out.phase * e.declared_prefactor;
    out.residual = (moved - state.scaled(*out.phase)).norm();
    out.stabilizes = std::abs(out.net_phase - 1.0) < tol;
  } else {
    out.residual = (moved - state).norm();
  }
  return out;
}

std::vector<Complex> topological_phases(const StateVector& state, std::span<const GroupElement> probes,
                                        double tol) {
  std::vector<Complex> found;
  for (const auto& g : probes) {
    auto c = phase_if_equal(state, apply(g, state), tol);
    if (!c) continue;
    bool seen = false;
    for (const auto& f : found) seen = seen || std::abs(f - *c) < tol * 10;
    if (!seen) found.push_back(*c);
  }
  return found;
}

GroupElement lambda8_probe(int mode) {
  return GroupElement::on_mode(three_mode_shape(), mode, exp_gell_mann({0.0, 0.0, 0.0, Complex(0.0, 2 * kPi / 3)}));
}

std::vector<GroupElement> psi1_probes() {
  std::vector<GroupElement> out;
  for (int slot = 0; slot < 6; ++slot)
    for (long sign : {1L, -1L}) {
      Psi1Integers v{};
      v[slot] = sign;
      out.push_back(psi1_diagonal_stabilizer(v, 0.0).element);
    }
  out.push_back(psi1_flip_stabilizer().element);
  out.push_back(psi1_rotation_stabilizer(0.7).element);
  out.push_back(lambda8_probe(0));
  return out;
}

std::vector<GroupElement> nonlocal_ac_probes(std::span<const double> alphas) {
  std::vector<GroupElement> out;
  for (double a : alphas) out.push_back(nonlocal_ac_stabilizer(a, 0.0, 0.0).element);
  return out;
}

std::vector<LiteralFailure> diagnose_psi1_literal(long range, std::span<const double> alphas) {
  if (range < 0 || range > 4) throw Error(ErrorKind::invalid_argument, "range must be in 0..4");
  const StateVector target = psi1();
  std::vector<LiteralFailure> out;
  const long w = 2 * range + 1;
  long total = 1;
  for (int i = 0; i < 6; ++i) total *= w;
  for (long code = 0; code < total; ++code) {
    Psi1Integers v{};
    long c = code;
    for (int i = 0; i < 6; ++i) {
      v[i] = c % w - range;
      c /= w;
    }
    for (double a : alphas) {
      const auto check = verify_stabilizes(psi1_diagonal_stabilizer_literal(v, a), target);
      if (!check.stabilizes) out.push_back({v, a, check.phase ? check.net_phase : Complex{}});
    }
  }
  return out;
}

}  // namespace modalent
