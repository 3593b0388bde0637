#include <cmath>
#include <numbers>

#include "modalent/classification.hpp"
#include "modalent/errors.hpp"
#include "modalent/invariants.hpp"

namespace modalent {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// slot order of the normal form
const std::array<const char*, 9> kSlots = {"uu0", "dd0", "d0d", "u0u", "u0d", "0dd", "0uu", "0du", "0ud"};

StateVector build_canonical(const std::array<double, 9>& r, double phi, double phi_prime, double theta) {
  std::array<Complex, 9> c{};
  for (int k = 0; k < 9; ++k) c[k] = r[k];
  c[4] = std::polar(r[4], phi);
  c[7] = std::polar(r[7], phi_prime);
  c[8] = std::polar(r[8], theta);
  StateVector s(three_mode_shape());
  for (int k = 0; k < 9; ++k) s.set(OccupationSequence::from_alias(kSlots[k]), c[k]);
  return s;
}

/// 2x2 block on the occupied levels, 1/det on the vacancy.
LocalOperator embed(const Mat2& r) {
  Matrix m = Matrix::Zero(3, 3);
  m.topLeftCorner(2, 2) = r;
  m(2, 2) = 1.0 / r.determinant();
  return LocalOperator(std::move(m));
}

bool already_schmidt(const Mat2& m) {
  return std::abs(m(0, 1)) < kZeroTol && std::abs(m(1, 0)) < kZeroTol && std::abs(m(0, 0).imag()) < kZeroTol &&
         std::abs(m(1, 1).imag()) < kZeroTol && m(0, 0).real() >= 0.0 && m(1, 1).real() >= 0.0 &&
         m(0, 0).real() >= m(1, 1).real();
}

double wrap(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0) w += kTwoPi;
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

// e^{i(x l3 + y l8)}; with an extra global phase chi
LocalOperator diagonal_phase(double x, double y, double chi) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = std::polar(1.0, x + y + chi);
  m(1, 1) = std::polar(1.0, -x + y + chi);
  m(2, 2) = std::polar(1.0, -2.0 * y + chi);
  return LocalOperator(std::move(m));
}

}  // namespace

StateVector canonical_state(const std::array<double, 9>& r, double phi, double phi_prime, double theta) {
  double s = 0.0;
  for (double x : r) {
    if (!std::isfinite(x)) throw Error(ErrorKind::non_finite, "canonical parameter");
    if (x < 0.0) throw Error(ErrorKind::out_of_range, "canonical amplitudes must be non-negative");
    s += x * x;
  }
  if (!std::isfinite(phi) || !std::isfinite(phi_prime) || !std::isfinite(theta))
    throw Error(ErrorKind::non_finite, "canonical phase");
  if (std::abs(s - 1.0) > 1e-10) throw Error(ErrorKind::not_normalized, "canonical amplitudes");
  return build_canonical(r, phi, phi_prime, theta);
}

CanonicalParams canonical_form(const StateVector& state) {
  if (!(state.shape() == three_mode_shape()))
    throw Error(ErrorKind::shape_mismatch, "canonical form needs (n=3,m=2,p=1)");
  if (std::abs(state.norm_squared() - 1.0) > 1e-9) throw Error(ErrorKind::not_normalized, "canonical_form input");

  const LocalOperator id3 = LocalOperator::identity(3);

  // Schmidt form on the AB block
  GroupElement g1 = GroupElement::identity(three_mode_shape());
  {
    const PairBlocks b = pair_blocks(state);
    if (!already_schmidt(b.ab)) {
      Eigen::JacobiSVD<Mat2> svd(b.ab, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const Mat2 ra = svd.matrixU().adjoint();
      const Mat2 rb = svd.matrixV().transpose();
      g1 = GroupElement({embed(ra), embed(rb), id3});
    }
  }
  const StateVector s1 = apply(g1, state);

  // rotate mode C so that the down row of the AC block is (0, |w|)
  GroupElement g2 = GroupElement::identity(three_mode_shape());
  {
    const PairBlocks b = pair_blocks(s1);
    const Complex w0 = b.ac(1, 0), w1 = b.ac(1, 1);
    if (std::abs(w0) >= kZeroTol) {
      const double nw = std::hypot(std::abs(w0), std::abs(w1));
      Mat2 rc;
      rc << w1 / nw, -w0 / nw, std::conj(w0) / nw, std::conj(w1) / nw;
      g2 = GroupElement({id3, id3, embed(rc)});
    }
  }
  const StateVector s2 = apply(g2, s1);

  // strip phases from the six unphased slots with diagonal l3/l8 rotations plus one global phase
  GroupElement g3 = GroupElement::identity(three_mode_shape());
  {
    static const std::array<int, 6> unphased = {0, 1, 2, 3, 5, 6};
    Eigen::MatrixXd a(6, 7);
    Eigen::VectorXd rhs(6);
    int rows = 0;
    for (int k : unphased) {
      const auto seq = OccupationSequence::from_alias(kSlots[k]);
      const Complex amp = s2.amplitude(seq);
      if (std::abs(amp) < kZeroTol) continue;
      a.row(rows).setZero();
      for (int mode = 0; mode < 3; ++mode) {
        const int sym = seq[mode];
        // u: x + y, d: -x + y, 0: -2y
        a(rows, 2 * mode) = sym == 1 ? 1.0 : (sym == 2 ? -1.0 : 0.0);
        a(rows, 2 * mode + 1) = sym == 0 ? -2.0 : 1.0;
      }
      a(rows, 6) = 1.0;
      rhs(rows) = -std::arg(amp);
      ++rows;
    }
    if (rows > 0) {
      const Eigen::MatrixXd sub = a.topRows(rows);
      const Eigen::VectorXd x = sub.completeOrthogonalDecomposition().solve(rhs.head(rows));
      g3 = GroupElement({diagonal_phase(x(0), x(1), x(6)), diagonal_phase(x(2), x(3), 0.0),
                         diagonal_phase(x(4), x(5), 0.0)});
    }
  }
  const StateVector s3 = apply(g3, s2);

  CanonicalParams out;
  for (int k = 0; k < 9; ++k) out.r[k] = std::abs(s3.amplitude(kSlots[k]));
  auto phase_of = [&](int k) {
    const Complex a = s3.amplitude(kSlots[k]);
    return std::abs(a) < kZeroTol ? 0.0 : wrap(std::arg(a));
  };
  out.phi = phase_of(4);
  out.phi_prime = phase_of(7);
  out.theta = phase_of(8);
  out.reducing = g3.compose(g2.compose(g1));
  out.residual = (apply(out.reducing, state) - build_canonical(out.r, out.phi, out.phi_prime, out.theta)).norm();
  return out;
}

}  // namespace modalent
