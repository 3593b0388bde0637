#include "modalent/classification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "modalent/errors.hpp"
#include "modalent/invariants.hpp"

namespace modalent {

namespace {

constexpr double kNormTol = 1e-10;

bool rank_at_most_one(const Eigen::Matrix<Complex, 2, 4>& m, double tol) {
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (std::abs(m(0, a) * m(1, b) - m(0, b) * m(1, a)) > tol) return false;
  return true;
}

void require_finite(std::initializer_list<double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) throw Error(ErrorKind::non_finite, "family parameter");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::out_of_range, what);
}

void require_normalized(double sum_sq) {
  if (std::abs(sum_sq - 1.0) > kNormTol)
    throw Error(ErrorKind::not_normalized, "squared parameters sum to " + std::to_string(sum_sq));
}

}  // namespace

BellProfile bell_profile(const StateVector& state, double tol) {
  const PairBlocks b = pair_blocks(state);
  BellProfile p;
  p.pair_nonlocal = {std::abs(b.ab.determinant()) > tol, std::abs(b.bc.determinant()) > tol,
                     std::abs(b.ac.determinant()) > tol};
  // conditional amplitudes of the rest, one row per occupied level of the single mode
  Eigen::Matrix<Complex, 2, 4> a, bb, c;
  a << b.ab, b.ac;
  bb << b.ab.transpose(), b.bc;
  c << b.ac.transpose(), b.bc.transpose();
  p.bipartition_nonlocal = {!rank_at_most_one(a, tol), !rank_at_most_one(bb, tol), !rank_at_most_one(c, tol)};
  p.tri_local = !(p.pair_nonlocal[0] || p.pair_nonlocal[1] || p.pair_nonlocal[2]);
  return p;
}

std::string describe(const BellProfile& p) {
  static constexpr std::array<const char*, 3> pairs = {"AB", "BC", "AC"};
  static constexpr std::array<const char*, 3> parts = {"A|BC", "B|AC", "C|AB"};
  std::string out = p.tri_local ? "tri-local" : "pairs:";
  if (!p.tri_local) {
    bool first = true;
    for (int k = 0; k < 3; ++k)
      if (p.pair_nonlocal[k]) {
        out += (first ? "" : ",") + std::string(pairs[k]);
        first = false;
      }
  }
  std::string bip;
  for (int k = 0; k < 3; ++k)
    if (p.bipartition_nonlocal[k]) bip += (bip.empty() ? "" : ",") + std::string(parts[k]);
  return out + "; nonlocal bipartitions: " + (bip.empty() ? "none" : bip);
}

StateVector family_local_all(double r1, double r2, double r3) {
  require_finite({r1, r2, r3});
  require(r1 >= 0 && r2 >= 0 && r3 >= 0, "local_all needs r1, r2, r3 >= 0");
  require_normalized(r1 * r1 + r2 * r2 + r3 * r3);
  return StateVector(three_mode_shape(), {{"dd0", r1}, {"d0d", r2}, {"0dd", r3}});
}

StateVector family_nonlocal_a(double r1, double r2, double r3) {
  require_finite({r1, r2, r3});
  require(r1 > 0 && r2 > 0 && r3 >= 0, "nonlocal_a needs r1, r2 > 0 and r3 >= 0");
  require_normalized(r1 * r1 + r2 * r2 + r3 * r3);
  return StateVector(three_mode_shape(), {{"dd0", r1}, {"u0u", r2}, {"0du", r3}});
}

StateVector family_nonlocal_ac(double r1, double r2, double r3, double r4, double phi) {
  require_finite({r1, r2, r3, r4, phi});
  require(r1 > 0 && r2 > 0 && r3 > 0 && r4 >= 0, "nonlocal_ac needs r1, r2, r3 > 0 and r4 >= 0");
  require_normalized(r1 * r1 + r2 * r2 + r3 * r3 + r4 * r4);
  return StateVector(three_mode_shape(),
                     {{"dd0", r1}, {"u0u", r2}, {"0dd", r3}, {"0du", std::polar(r4, phi)}});
}

StateVector family_nonlocal_all(double r1, double r2, double r3, double r4, double r5, double theta) {
  require_finite({r1, r2, r3, r4, r5, theta});
  require(r1 > 0 && r2 > 0 && r5 > 0 && r3 >= 0 && r4 >= 0,
          "nonlocal_all needs r1, r2, r5 > 0 and r3, r4 >= 0");
  const double r6 = r3 * r4 / r5;
  require_normalized(r1 * r1 + r2 * r2 + r3 * r3 + r4 * r4 + r5 * r5 + r6 * r6);
  return StateVector(three_mode_shape(), {{"dd0", r1},
                                          {"u0u", r2},
                                          {"0dd", r3},
                                          {"0uu", r4},
                                          {"0ud", std::polar(r5, theta)},
                                          {"0du", std::polar(r6, -theta)}});
}

StateVector family_s1(double r) {
  require_finite({r});
  const double top = 1.0 / std::sqrt(6.0);
  require(r >= 0 && r <= top + 1e-15, "s1 needs 0 <= r <= 1/sqrt(6)");
  const double a = 1.0 / std::sqrt(6.0);
  const double b = std::sqrt(std::max(0.0, 1.0 / 6.0 - r * r));
  return StateVector(three_mode_shape(), {{"uu0", a},
                                          {"dd0", a},
                                          {"d0d", a},
                                          {"u0u", a},
                                          {"0dd", b},
                                          {"0uu", b},
                                          {"0du", r},
                                          {"0ud", -r}});
}

StateVector family_s2(double r, double theta) {
  require_finite({r, theta});
  require(r >= 0 && r < 1.0 / std::sqrt(3.0), "s2 needs 0 <= r < 1/sqrt(3)");
  const double s = std::sqrt(1.0 / 3.0 - r * r);
  return StateVector(three_mode_shape(), {{"uu0", r},
                                          {"d0d", r},
                                          {"0du", std::polar(r, theta)},
                                          {"dd0", s},
                                          {"u0u", s},
                                          {"0ud", s}});
}

StateVector psi1() {
  const double a = 1.0 / std::sqrt(6.0);
  return StateVector(three_mode_shape(),
                     {{"uu0", a}, {"dd0", a}, {"d0d", a}, {"u0u", a}, {"0dd", a}, {"0uu", a}});
}

StateVector psi2() {
  const double a = 1.0 / std::sqrt(3.0);
  return StateVector(three_mode_shape(), {{"uu0", a}, {"d0d", a}, {"0du", a}});
}

std::vector<std::string_view> family_names() {
  return {"local_all", "nonlocal_a", "nonlocal_ac", "nonlocal_all", "canonical", "s1", "s2", "psi1", "psi2"};
}

StateVector family(std::string_view name, std::span<const double> p) {
  auto need = [&](std::size_t n) {
    if (p.size() != n)
      throw Error(ErrorKind::invalid_argument, std::string(name) + " takes " + std::to_string(n) +
                                                   " parameters, got " + std::to_string(p.size()));
  };
  if (name == "local_all") return need(3), family_local_all(p[0], p[1], p[2]);
  if (name == "nonlocal_a") return need(3), family_nonlocal_a(p[0], p[1], p[2]);
  if (name == "nonlocal_ac") return need(5), family_nonlocal_ac(p[0], p[1], p[2], p[3], p[4]);
  if (name == "nonlocal_all") return need(6), family_nonlocal_all(p[0], p[1], p[2], p[3], p[4], p[5]);
  if (name == "s1") return need(1), family_s1(p[0]);
  if (name == "s2") return need(2), family_s2(p[0], p[1]);
  if (name == "psi1") return need(0), psi1();
  if (name == "psi2") return need(0), psi2();
  if (name == "canonical") {
    need(12);
    std::array<double, 9> r{};
    std::copy(p.begin(), p.begin() + 9, r.begin());
    return canonical_state(r, p[9], p[10], p[11]);
  }
  throw Error(ErrorKind::invalid_argument, "unknown family '" + std::string(name) + "'");
}

ModePair parse_mode_pair(std::string_view t) {
  if (t == "AB" || t == "ab") return ModePair::ab;
  if (t == "BC" || t == "bc") return ModePair::bc;
  if (t == "AC" || t == "ac") return ModePair::ac;
  throw Error(ErrorKind::invalid_argument, "unknown mode pair '" + std::string(t) + "'");
}

std::string_view to_string(ModePair pair) noexcept {
  switch (pair) {
    case ModePair::ab: return "AB";
    case ModePair::bc: return "BC";
    case ModePair::ac: return "AC";
  }
  return "AB";
}

PairProjection pair_projection(const StateVector& state, ModePair pair) {
  const PairBlocks b = pair_blocks(state);
  const Mat2& m = pair == ModePair::ab ? b.ab : (pair == ModePair::bc ? b.bc : b.ac);
  PairProjection out;
  const double w = m.squaredNorm();
  if (w < kZeroTol * kZeroTol) return out;
  Eigen::Vector4cd v;
  v << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
  out.weight = w;
  out.state = v / std::sqrt(w);
  return out;
}

namespace {

const std::array<Mat2, 3>& paulis() {
  static const std::array<Mat2, 3> s = [] {
    Mat2 x, y, z;
    x << 0, 1, 1, 0;
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    z << 1, 0, 0, -1;
    return std::array<Mat2, 3>{x, y, z};
  }();
  return s;
}

Eigen::Matrix4cd kron(const Mat2& a, const Mat2& b) {
  Eigen::Matrix4cd k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return k;
}

}  // namespace

double chsh_value(const Eigen::Matrix4cd& rho) {
  if (!rho.allFinite()) throw Error(ErrorKind::non_finite, "density matrix");
  if (std::abs(rho.trace() - 1.0) > 1e-9) throw Error(ErrorKind::not_normalized, "two-qubit density matrix trace");
  const auto& s = paulis();
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = (rho * kron(s[i], s[j])).trace().real();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.transpose() * t, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();  // ascending
  return 2.0 * std::sqrt(std::max(0.0, ev(1) + ev(2)));
}

double chsh_value(const Eigen::Vector4cd& psi) {
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-9) throw Error(ErrorKind::not_normalized, "two-qubit state");
  return chsh_value(Eigen::Matrix4cd(psi * psi.adjoint()));
}

double concurrence(const Eigen::Vector4cd& psi) { return 2.0 * std::abs(psi(0) * psi(3) - psi(1) * psi(2)); }

}  // namespace modalent
