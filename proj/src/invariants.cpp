#include "modalent/invariants.hpp"

#include <cmath>

#include "modalent/errors.hpp"

namespace modalent {

namespace {

constexpr int U = 0;
constexpr int D = 1;

void require_three_mode(const SystemShape& s) {
  if (!(s == three_mode_shape()))
    throw Error(ErrorKind::shape_mismatch, "invariants need (n=3,m=2,p=1), got " + s.describe());
}

}  // namespace

const Mat2& sigma_y() {
  static const Mat2 s = [] {
    Mat2 m;
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
  }();
  return s;
}

PairBlocks pair_blocks(const StateVector& state) {
  require_three_mode(state.shape());
  PairBlocks b;
  for (const auto& [seq, a] : state.amplitudes()) {
    const int s0 = seq[0], s1 = seq[1], s2 = seq[2];
    if (s2 == 0) {
      b.ab(s0 - 1, s1 - 1) = a;
    } else if (s0 == 0) {
      b.bc(s1 - 1, s2 - 1) = a;
    } else {
      b.ac(s0 - 1, s2 - 1) = a;
    }
  }
  return b;
}

StateVector state_from_blocks(const PairBlocks& b) {
  StateVector out(three_mode_shape());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      out.set(OccupationSequence{i + 1, j + 1, 0}, b.ab(i, j));
      out.set(OccupationSequence{0, i + 1, j + 1}, b.bc(i, j));
      out.set(OccupationSequence{i + 1, 0, j + 1}, b.ac(i, j));
    }
  return out;
}

Complex i2_polynomial(const PairBlocks& b) {
  const auto& ab = b.ab;
  const auto& bc = b.bc;
  const auto& ac = b.ac;
  return ab(U, U) * (bc(D, D) * ac(D, U) - bc(D, U) * ac(D, D)) +
         ab(U, D) * (bc(U, U) * ac(D, D) - bc(U, D) * ac(D, U)) +
         ab(D, U) * (bc(D, U) * ac(U, D) - bc(D, D) * ac(U, U)) +
         ab(D, D) * (bc(U, D) * ac(U, U) - bc(U, U) * ac(U, D));
}

double unitary_invariant_a_bc(const PairBlocks& b) {
  // minors across the A index: one column of M_AB against one of M_AC
  double s = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) s += std::norm(b.ab(D, j) * b.ac(U, k) - b.ab(U, j) * b.ac(D, k));
  return s;
}

double unitary_invariant_b_ac(const PairBlocks& b) {
  double s = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) s += std::norm(b.ab(i, D) * b.bc(U, k) - b.ab(i, U) * b.bc(D, k));
  return s;
}

double unitary_invariant_c_ab(const PairBlocks& b) {
  double s = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) s += std::norm(b.bc(j, D) * b.ac(i, U) - b.bc(j, U) * b.ac(i, D));
  return s;
}

Mat2 trace_word_matrix(const PairBlocks& b) {
  const Mat2& sy = sigma_y();
  return b.ab * sy * b.bc * sy * b.ac.transpose() * sy;
}

InvariantReport invariant_report(const PairBlocks& b) {
  InvariantReport r;
  r.i_ab = b.ab.determinant();
  r.i_bc = b.bc.determinant();
  r.i_ac = b.ac.determinant();
  r.i1 = r.i_ab * r.i_bc * r.i_ac;
  r.i2 = i2_polynomial(b);
  r.monotone1 = std::cbrt(std::abs(r.i1));
  r.monotone2 = std::pow(std::abs(r.i2), 2.0 / 3.0);
  r.i_a_bc = unitary_invariant_a_bc(b);
  r.i_b_ac = unitary_invariant_b_ac(b);
  r.i_c_ab = unitary_invariant_c_ab(b);
  r.w = trace_word_matrix(b);
  return r;
}

InvariantReport invariant_report(const StateVector& state) { return invariant_report(pair_blocks(state)); }

}  // namespace modalent
