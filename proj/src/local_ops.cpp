#include "modalent/local_ops.hpp"

#include <cmath>
#include <numbers>

#include "modalent/errors.hpp"

namespace modalent {

namespace {

constexpr Complex kI{0.0, 1.0};

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

}  // namespace

LocalOperator::LocalOperator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 2)
    throw Error(ErrorKind::invalid_argument, "local operator must be square with dim >= 2");
  if (!m_.allFinite()) throw Error(ErrorKind::non_finite, "local operator entries");
}

LocalOperator LocalOperator::identity(int dim) { return LocalOperator(Matrix::Identity(dim, dim)); }

bool LocalOperator::is_superselection_compliant(double tol) const {
  const int v = dim() - 1;
  for (int k = 0; k < v; ++k)
    if (std::abs(m_(k, v)) > tol || std::abs(m_(v, k)) > tol) return false;
  return true;
}

bool LocalOperator::is_unitary(double tol) const {
  return (m_ * m_.adjoint() - Matrix::Identity(dim(), dim())).cwiseAbs().maxCoeff() < tol;
}

bool LocalOperator::has_unit_determinant(double tol) const { return std::abs(determinant() - 1.0) < tol; }

LocalOperator LocalOperator::operator*(const LocalOperator& rhs) const {
  if (dim() != rhs.dim()) throw Error(ErrorKind::shape_mismatch, "operator dimensions differ");
  return LocalOperator(m_ * rhs.m_);
}

std::string_view to_string(GroupKind kind) noexcept {
  switch (kind) {
    case GroupKind::slocc: return "SLOCC";
    case GroupKind::su: return "SU";
    case GroupKind::neither: return "neither";
  }
  return "neither";
}

GroupElement::GroupElement(std::vector<LocalOperator> per_mode) : factors_(std::move(per_mode)) {
  if (factors_.empty()) throw Error(ErrorKind::invalid_argument, "group element needs at least one mode");
  bool special = true;
  bool unitary = true;
  for (const auto& f : factors_) {
    if (f.dim() != factors_.front().dim()) throw Error(ErrorKind::invalid_argument, "mixed local dimensions");
    special = special && f.is_superselection_compliant() && f.has_unit_determinant();
    unitary = unitary && f.is_unitary();
  }
  kind_ = !special ? GroupKind::neither : (unitary ? GroupKind::su : GroupKind::slocc);
}

GroupElement GroupElement::identity(const SystemShape& shape) {
  return GroupElement(std::vector<LocalOperator>(static_cast<std::size_t>(shape.modes()),
                                                 LocalOperator::identity(shape.local_dim())));
}

GroupElement GroupElement::on_mode(const SystemShape& shape, int mode, const LocalOperator& op) {
  if (mode < 0 || mode >= shape.modes()) throw Error(ErrorKind::out_of_range, "mode index");
  if (op.dim() != shape.local_dim()) throw Error(ErrorKind::shape_mismatch, "operator dimension");
  auto f = GroupElement::identity(shape).factors_;
  f[static_cast<std::size_t>(mode)] = op;
  return GroupElement(std::move(f));
}

bool GroupElement::is_superselection_compliant(double tol) const {
  for (const auto& f : factors_)
    if (!f.is_superselection_compliant(tol)) return false;
  return true;
}

GroupElement GroupElement::compose(const GroupElement& rhs) const {
  if (modes() != rhs.modes()) throw Error(ErrorKind::shape_mismatch, "compose: mode count");
  std::vector<LocalOperator> out;
  out.reserve(factors_.size());
  for (std::size_t j = 0; j < factors_.size(); ++j) out.push_back(factors_[j] * rhs.factors_[j]);
  return GroupElement(std::move(out));
}

GroupElement GroupElement::adjoint() const {
  std::vector<LocalOperator> out;
  for (const auto& f : factors_) out.push_back(f.adjoint());
  return GroupElement(std::move(out));
}

LocalOperator gell_mann(int index) {
  Matrix m = Matrix::Zero(3, 3);
  switch (index) {
    case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 2: m(0, 1) = -kI; m(1, 0) = kI; break;
    case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    case 8: m(0, 0) = 1.0; m(1, 1) = 1.0; m(2, 2) = -2.0; break;
    default:
      throw Error(ErrorKind::invalid_argument, "Gell-Mann index must be 1, 2, 3 or 8, got " + std::to_string(index));
  }
  return LocalOperator(std::move(m));
}

LocalOperator exp_gell_mann(const GellMannCoefficients& c) {
  if (!finite(c.l1) || !finite(c.l2) || !finite(c.l3) || !finite(c.l8))
    throw Error(ErrorKind::non_finite, "Gell-Mann coefficients");
  static const Matrix l1 = gell_mann(1).matrix(), l2 = gell_mann(2).matrix(), l3 = gell_mann(3).matrix(),
                      l8 = gell_mann(8).matrix();
  return matrix_exp(LocalOperator(c.l1 * l1 + c.l2 * l2 + c.l3 * l3 + c.l8 * l8));
}

GroupElement make_slocc_element(std::span<const GellMannCoefficients> per_mode) {
  if (per_mode.size() != 3) throw Error(ErrorKind::invalid_argument, "expected three sets of coefficients");
  std::vector<LocalOperator> f;
  for (const auto& c : per_mode) f.push_back(exp_gell_mann(c));
  GroupElement g(std::move(f));
  if (g.kind() == GroupKind::neither) throw Error(ErrorKind::non_finite, "exponential lost determinant 1");
  return g;
}

StateVector apply(const GroupElement& g, const StateVector& state) {
  const auto& shape = state.shape();
  if (g.modes() != shape.modes()) throw Error(ErrorKind::shape_mismatch, "group element mode count");
  const int d = shape.local_dim();
  const int p = shape.spin_numerator();
  for (const auto& f : g.factors()) {
    if (f.dim() != d) throw Error(ErrorKind::shape_mismatch, "operator dimension vs local dimension");
    if (!f.is_superselection_compliant())
      throw Error(ErrorKind::superselection_violation, "factor mixes occupied levels with the vacancy");
  }
  const int vac = p + 1;
  StateVector out(shape);
  std::vector<std::pair<std::vector<std::uint8_t>, Complex>> partial, next;
  for (const auto& [seq, amp] : state.amplitudes()) {
    partial.assign(1, {seq.symbols(), amp});
    for (int j = 0; j < shape.modes(); ++j) {
      const Matrix& m = g.factor(j).matrix();
      next.clear();
      for (const auto& [syms, a] : partial) {
        const int col = local_index(syms[j], p);
        // vacancy only maps to vacancy, occupied only to occupied
        const int lo = col == vac ? vac : 0;
        const int hi = col == vac ? vac : vac - 1;
        for (int row = lo; row <= hi; ++row) {
          const Complex e = m(row, col);
          if (e == Complex{}) continue;
          auto s = syms;
          s[j] = static_cast<std::uint8_t>(symbol_at(row, p));
          next.emplace_back(std::move(s), a * e);
        }
      }
      partial.swap(next);
    }
    for (auto& [syms, a] : partial) out.add(OccupationSequence(std::move(syms)), a);
  }
  return out;
}

LocalOperator vacancy_scaling(double r, double phi, int p) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::invalid_argument, "scaling needs r > 0");
  if (p < 0) throw Error(ErrorKind::invalid_argument, "negative spin numerator");
  Matrix m = Matrix::Zero(p + 2, p + 2);
  const Complex occ = std::polar(r, phi);
  for (int k = 0; k <= p; ++k) m(k, k) = occ;
  m(p + 1, p + 1) = std::polar(std::pow(r, -(p + 1)), -(p + 1) * phi);
  return LocalOperator(std::move(m));
}

LocalOperator level_contraction(Complex alpha, int p) {
  if (p < 1) throw Error(ErrorKind::invalid_argument, "contraction needs p >= 1");
  if (!finite(alpha)) throw Error(ErrorKind::non_finite, "alpha");
  Matrix m = Matrix::Zero(p + 2, p + 2);
  const double q = static_cast<double>(p);
  m(0, 0) = std::exp(-(q + 1) * alpha);
  m(1, 1) = std::exp((q + 3) * alpha);
  for (int k = 2; k <= p; ++k) m(k, k) = std::exp(alpha);
  m(p + 1, p + 1) = std::exp(-(q + 1) * alpha);
  return LocalOperator(std::move(m));
}

namespace {

// traceless block-diagonal generator: occupied block + compensating vacancy entry
Matrix random_generator(GroupKind kind, std::mt19937_64& rng, double spread, int p) {
  const int d = p + 2;
  Matrix h = Matrix::Zero(d, d);
  if (kind == GroupKind::su) {
    std::normal_distribution<double> g(0.0, spread);
    if (p == 1) {
      for (int k : {1, 2, 3, 8}) h += kI * g(rng) * gell_mann(k).matrix();
      return h;
    }
    std::normal_distribution<double> half(0.0, spread / std::numbers::sqrt2);
    for (int i = 0; i <= p; ++i) {
      h(i, i) = g(rng);
      for (int j = i + 1; j <= p; ++j) {
        h(i, j) = Complex(half(rng), half(rng));
        h(j, i) = std::conj(h(i, j));
      }
    }
    h(p + 1, p + 1) = -h.topLeftCorner(p + 1, p + 1).trace();
    return kI * h;
  }
  std::normal_distribution<double> c(0.0, spread / std::numbers::sqrt2);
  if (p == 1) {
    for (int k : {1, 2, 3, 8}) h += Complex(c(rng), c(rng)) * gell_mann(k).matrix();
    return h;
  }
  for (int i = 0; i <= p; ++i)
    for (int j = 0; j <= p; ++j) h(i, j) = Complex(c(rng), c(rng));
  h(p + 1, p + 1) = -h.topLeftCorner(p + 1, p + 1).trace();
  return h;
}

}  // namespace

GroupElement random_element(GroupKind kind, std::mt19937_64& rng, double spread, const SystemShape& shape) {
  if (!(spread > 0.0)) throw Error(ErrorKind::invalid_argument, "spread must be positive");
  if (kind == GroupKind::neither) throw Error(ErrorKind::invalid_argument, "kind must be SLOCC or SU");
  std::vector<LocalOperator> f;
  for (int j = 0; j < shape.modes(); ++j)
    f.push_back(LocalOperator(matrix_exp(random_generator(kind, rng, spread, shape.spin_numerator()))));
  return GroupElement(std::move(f));
}

}  // namespace modalent
