#include "modalent/general_max_ent.hpp"

#include <cmath>
#include <map>

#include "modalent/errors.hpp"

namespace modalent {

bool feasible(int n, int m, int p) {
  return static_cast<long long>(m) * (p + 2) == static_cast<long long>(n) * (p + 1);
}

std::vector<std::uint8_t> sequence_pattern(int r, int p) {
  if (r < 1 || p < 0) throw Error(ErrorKind::invalid_argument, "pattern needs r >= 1 and p >= 0");
  const int period = p + 2;
  std::vector<std::uint8_t> s(static_cast<std::size_t>(r * period));
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = static_cast<std::uint8_t>(j % period);
  return s;
}

std::vector<std::uint8_t> shifted_pattern(const std::vector<std::uint8_t>& base, int k, int p) {
  const int n = static_cast<int>(base.size());
  const int shift = ((k % (p + 2)) + (p + 2)) % (p + 2);
  std::vector<std::uint8_t> out(base.size());
  for (int j = 0; j < n; ++j) out[static_cast<std::size_t>((j + shift) % n)] = base[static_cast<std::size_t>(j)];
  return out;
}

StateVector build_psi_sigma(int r, int p, std::uint64_t cap) {
  if (r < 1 || p < 0) throw Error(ErrorKind::invalid_argument, "need r >= 1 and p >= 0");
  if (p > 250 || r > 1000) throw Error(ErrorKind::invalid_argument, "r or p too large");
  const SystemShape shape(r * (p + 2), r * (p + 1), p);
  if (shape.dimension() > cap)
    throw Error(ErrorKind::cap_exceeded, shape.describe() + " has dimension " + std::to_string(shape.dimension()) +
                                             " > cap " + std::to_string(cap));
  const auto base = sequence_pattern(r, p);
  const double amp = 1.0 / std::sqrt(static_cast<double>(p + 2));
  StateVector out(shape);
  for (int i = 1; i <= p + 2; ++i) out.add(OccupationSequence(shifted_pattern(base, i, p)), amp);
  return out;
}

namespace {

// rows: occupied levels of `mode`; columns: distinct configurations of the other modes
Eigen::MatrixXcd conditional_matrix(const StateVector& state, int mode) {
  const int p = state.shape().spin_numerator();
  std::map<std::vector<std::uint8_t>, int> columns;
  std::vector<std::tuple<int, int, Complex>> entries;
  for (const auto& [seq, a] : state.amplitudes()) {
    if (seq[static_cast<std::size_t>(mode)] == 0) continue;
    std::vector<std::uint8_t> rest;
    for (std::size_t j = 0; j < seq.size(); ++j)
      if (static_cast<int>(j) != mode) rest.push_back(seq[j]);
    auto [it, fresh] = columns.try_emplace(std::move(rest), static_cast<int>(columns.size()));
    entries.emplace_back(local_index(seq[static_cast<std::size_t>(mode)], p), it->second, a);
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(p + 1, std::max<Eigen::Index>(1, static_cast<Eigen::Index>(columns.size())));
  for (const auto& [row, col, a] : entries) m(row, col) = a;
  return m;
}

void check_mode(const StateVector& state, int mode) {
  if (mode < 0 || mode >= state.shape().modes()) throw Error(ErrorKind::out_of_range, "mode index");
}

}  // namespace

bool single_mode_bipartition_local(const StateVector& state, int mode, double tol) {
  check_mode(state, mode);
  const Eigen::MatrixXcd m = conditional_matrix(state, mode);
  if (m.rows() < 2) return true;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(1) < tol;
}

ContractionWitness contraction_witness(const StateVector& state, int mode, Complex alpha) {
  check_mode(state, mode);
  const auto& shape = state.shape();
  const int p = shape.spin_numerator();
  if (p < 1) throw Error(ErrorKind::precondition, "contraction witness needs p >= 1");
  if (!single_mode_bipartition_local(state, mode))
    throw Error(ErrorKind::precondition, "state is not local across the single-mode bipartition");

  // occupied direction at `mode`: leading left singular vector of the conditional matrix
  const Eigen::MatrixXcd cond = conditional_matrix(state, mode);
  Eigen::VectorXcd dir = Eigen::VectorXcd::Zero(p + 1);
  dir(0) = 1.0;
  if (cond.norm() > kZeroTol) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cond, Eigen::ComputeThinU);
    dir = svd.matrixU().col(0);
  }
  // unitary V with V dir = e_0 up to phase
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(dir);
  const Matrix q = qr.householderQ() * Matrix::Identity(p + 1, p + 1);
  Matrix v = Matrix::Identity(p + 2, p + 2);
  v.topLeftCorner(p + 1, p + 1) = q.adjoint();
  const Matrix g = v.adjoint() * level_contraction(alpha, p).matrix() * v;

  ContractionWitness out;
  out.element = GroupElement::on_mode(shape, mode, LocalOperator(g));
  const StateVector moved = apply(out.element, state);
  const double q1 = static_cast<double>(p + 1);
  out.norm_ratio = moved.norm() / state.norm();
  out.expected_norm_ratio = std::exp(-q1 * alpha.real());
  out.expected_phase = std::polar(1.0, -q1 * alpha.imag());
  const Complex c = inner_product(state, moved) / state.norm_squared();
  if ((moved - state.scaled(c)).norm() <= 1e-9 * std::max(1.0, moved.norm()) && std::abs(c) > 0.0)
    out.phase = c / std::abs(c);
  const bool norm_ok = std::abs(out.norm_ratio - out.expected_norm_ratio) <= 1e-10 * std::max(1.0, out.expected_norm_ratio);
  const bool phase_ok = out.phase && std::abs(*out.phase - out.expected_phase) <= 1e-9;
  out.counterexample = !(norm_ok && phase_ok);
  return out;
}

std::vector<ScanRow> existence_scan(int n_lo, int n_hi, int p_lo, int p_hi, std::uint64_t cap) {
  if (n_lo < 1 || n_hi < n_lo || p_lo < 0 || p_hi < p_lo || n_hi > 64 || p_hi > 16)
    throw Error(ErrorKind::invalid_argument, "scan ranges need 1 <= n_lo <= n_hi <= 64 and 0 <= p_lo <= p_hi <= 16");
  std::vector<ScanRow> rows;
  for (int n = n_lo; n <= n_hi; ++n)
    for (int p = p_lo; p <= p_hi; ++p)
      for (int m = 0; m <= n; ++m) {
        ScanRow row{n, m, p, feasible(n, m, p), false, false};
        if (row.feasible) {
          const int r = n / (p + 2);
          try {
            const StateVector s = build_psi_sigma(r, p, cap);
            row.constructed = true;
            row.verified = is_maximally_entangled(s, kZeroTol);
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::cap_exceeded) throw;
          }
        }
        rows.push_back(row);
      }
  return rows;
}

}  // namespace modalent
