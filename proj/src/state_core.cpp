#include "modalent/state.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "modalent/errors.hpp"

namespace modalent {

SystemShape::SystemShape(int modes, int particles, int spin_numerator)
    : modes_(modes), particles_(particles), spin_(spin_numerator) {
  if (modes < 1 || particles < 0 || spin_numerator < 0) {
    throw Error(ErrorKind::invalid_shape, "need n >= 1, m >= 0, p >= 0, got " + describe());
  }
  if (particles > modes) throw Error(ErrorKind::invalid_shape, "m > n in " + describe());
  if (spin_numerator > 250) throw Error(ErrorKind::invalid_shape, "spin numerator too large");
}

std::uint64_t SystemShape::dimension() const noexcept {
  using U = unsigned __int128;
  constexpr U limit = std::numeric_limits<std::uint64_t>::max();
  U binom = 1;
  for (int i = 1; i <= particles_; ++i) {
    binom = binom * static_cast<U>(modes_ - particles_ + i) / static_cast<U>(i);
    if (binom > limit) return std::numeric_limits<std::uint64_t>::max();
  }
  U total = binom;
  for (int i = 0; i < particles_; ++i) {
    total *= static_cast<U>(levels());
    if (total > limit) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(total);
}

std::string SystemShape::describe() const {
  std::ostringstream os;
  os << "(n=" << modes_ << ",m=" << particles_ << ",p=" << spin_ << ")";
  return os.str();
}

SystemShape three_mode_shape() { return SystemShape(3, 2, 1); }

int local_index(int symbol, int p) {
  if (symbol < 0 || symbol > p + 1) throw Error(ErrorKind::out_of_range, "symbol out of range");
  return symbol == 0 ? p + 1 : symbol - 1;
}

int symbol_at(int local, int p) {
  if (local < 0 || local > p + 1) throw Error(ErrorKind::out_of_range, "local index out of range");
  return local == p + 1 ? 0 : local + 1;
}

OccupationSequence::OccupationSequence(std::initializer_list<int> symbols) {
  symbols_.reserve(symbols.size());
  for (int s : symbols) {
    if (s < 0 || s > 255) throw Error(ErrorKind::out_of_range, "symbol out of range");
    symbols_.push_back(static_cast<std::uint8_t>(s));
  }
}

OccupationSequence OccupationSequence::from_alias(std::string_view text) {
  std::vector<std::uint8_t> out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'u': out.push_back(1); break;
      case 'd': out.push_back(2); break;
      case '0': out.push_back(0); break;
      default:
        throw Error(ErrorKind::parse_error, "bad alias character '" + std::string(1, c) + "' in \"" +
                                                std::string(text) + "\"");
    }
  }
  return OccupationSequence(std::move(out));
}

int OccupationSequence::occupied() const noexcept {
  return static_cast<int>(std::count_if(symbols_.begin(), symbols_.end(), [](auto s) { return s != 0; }));
}

std::string OccupationSequence::alias() const {
  std::string out;
  for (auto s : symbols_) {
    if (s > 2) throw Error(ErrorKind::invalid_argument, "alias form needs symbols in {0,1,2}");
    out.push_back(s == 0 ? '0' : (s == 1 ? 'u' : 'd'));
  }
  return out;
}

std::string OccupationSequence::describe() const {
  std::string out = "[";
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(symbols_[i]);
  }
  return out + "]";
}

bool admissible(const OccupationSequence& seq, const SystemShape& shape) noexcept {
  if (static_cast<int>(seq.size()) != shape.modes()) return false;
  for (auto s : seq.symbols())
    if (s > shape.levels()) return false;
  return seq.occupied() == shape.particles();
}

StateVector::StateVector(SystemShape shape) : shape_(shape) {}

StateVector::StateVector(SystemShape shape,
                         std::initializer_list<std::pair<std::string_view, Complex>> terms)
    : shape_(shape) {
  for (const auto& [alias, value] : terms) add(OccupationSequence::from_alias(alias), value);
}

void StateVector::check(const OccupationSequence& seq) const {
  if (!admissible(seq, shape_)) {
    throw Error(ErrorKind::invalid_argument,
                "sequence " + seq.describe() + " is not admissible for " + shape_.describe());
  }
}

Complex StateVector::amplitude(const OccupationSequence& seq) const {
  auto it = amps_.find(seq);
  return it == amps_.end() ? Complex{} : it->second;
}

Complex StateVector::amplitude(std::string_view alias) const {
  return amplitude(OccupationSequence::from_alias(alias));
}

void StateVector::set(const OccupationSequence& seq, Complex value) {
  check(seq);
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw Error(ErrorKind::non_finite, "amplitude for " + seq.describe());
  if (value == Complex{}) {
    amps_.erase(seq);
  } else {
    amps_[seq] = value;
  }
}

void StateVector::add(const OccupationSequence& seq, Complex value) {
  set(seq, amplitude(seq) + value);
}

double StateVector::norm_squared() const noexcept {
  double s = 0.0;
  for (const auto& [seq, a] : amps_) s += std::norm(a);
  return s;
}

double StateVector::norm() const noexcept { return std::sqrt(norm_squared()); }

StateVector StateVector::scaled(Complex c) const {
  StateVector out(shape_);
  for (const auto& [seq, a] : amps_) out.set(seq, c * a);
  return out;
}

StateVector StateVector::operator+(const StateVector& rhs) const {
  if (!(shape_ == rhs.shape_)) throw Error(ErrorKind::shape_mismatch, "operator+");
  StateVector out = *this;
  for (const auto& [seq, a] : rhs.amps_) out.add(seq, a);
  return out;
}

StateVector StateVector::operator-(const StateVector& rhs) const { return *this + rhs.scaled(-1.0); }

StateVector StateVector::permuted_modes(std::span<const int> order) const {
  const int n = shape_.modes();
  if (static_cast<int>(order.size()) != n) throw Error(ErrorKind::invalid_argument, "permutation size");
  std::vector<bool> seen(n, false);
  for (int o : order) {
    if (o < 0 || o >= n || seen[o]) throw Error(ErrorKind::invalid_argument, "not a permutation");
    seen[o] = true;
  }
  StateVector out(shape_);
  for (const auto& [seq, a] : amps_) {
    std::vector<std::uint8_t> s(n);
    for (int j = 0; j < n; ++j) s[j] = seq[order[j]];
    out.set(OccupationSequence(std::move(s)), a);
  }
  return out;
}

StateVector basis_state(const SystemShape& shape, const OccupationSequence& seq) {
  StateVector out(shape);
  out.set(seq, 1.0);
  return out;
}

namespace {

// index into the 12-element dense basis, keyed by s0*9+s1*3+s2; -1 if inadmissible
const std::array<int, 27>& dense12_table() {
  static const std::array<int, 27> table = [] {
    std::array<int, 27> t{};
    t.fill(-1);
    int k = 0;
    for (const auto& seq : enumerate_basis(three_mode_shape())) t[seq[0] * 9 + seq[1] * 3 + seq[2]] = k++;
    return t;
  }();
  return table;
}

void require_three_mode(const StateVector& s) {
  if (!(s.shape() == three_mode_shape()))
    throw Error(ErrorKind::shape_mismatch, "expected (n=3,m=2,p=1), got " + s.shape().describe());
}

}  // namespace

Dense12 to_dense12(const StateVector& state) {
  require_three_mode(state);
  Dense12 v = Dense12::Zero();
  const auto& t = dense12_table();
  for (const auto& [seq, a] : state.amplitudes()) v(t[seq[0] * 9 + seq[1] * 3 + seq[2]]) = a;
  return v;
}

StateVector from_dense12(const Dense12& v) {
  static const std::vector<OccupationSequence> basis = enumerate_basis(three_mode_shape());
  StateVector out(three_mode_shape());
  for (int k = 0; k < 12; ++k) out.set(basis[k], v(k));
  return out;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0)
    throw Error(ErrorKind::invalid_argument, "density matrix must be square and non-empty");
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

double DensityMatrix::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::MatrixXcd h = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::distance_to_maximally_mixed() const {
  const int d = dim();
  Eigen::MatrixXcd target = Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d);
  return (rho_ - target).cwiseAbs().maxCoeff();
}

bool DensityMatrix::is_valid(double tol) const {
  return hermiticity_error() < tol && std::abs(trace() - 1.0) < tol && min_eigenvalue() > -tol;
}

std::vector<OccupationSequence> enumerate_basis(const SystemShape& shape) {
  if (shape.dimension() > kDimensionCap)
    throw Error(ErrorKind::cap_exceeded, "basis of " + shape.describe() + " exceeds the dense cap");
  const int n = shape.modes();
  const int m = shape.particles();
  const int top = shape.levels();
  std::vector<OccupationSequence> out;
  out.reserve(static_cast<std::size_t>(shape.dimension()));
  std::vector<std::uint8_t> cur(n, 0);
  // depth-first in symbol order gives lexicographic output
  auto rec = [&](auto&& self, int pos, int placed) -> void {
    if (pos == n) {
      if (placed == m) out.emplace_back(cur);
      return;
    }
    const int remaining = n - pos;
    for (int s = 0; s <= top; ++s) {
      const int next = placed + (s != 0);
      if (next > m || next + (remaining - 1) < m) continue;
      cur[pos] = static_cast<std::uint8_t>(s);
      self(self, pos + 1, next);
    }
  };
  rec(rec, 0, 0);
  return out;
}

Eigen::VectorXcd to_dense(const StateVector& state, const std::vector<OccupationSequence>& basis) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  std::map<OccupationSequence, Eigen::Index> pos;
  for (std::size_t k = 0; k < basis.size(); ++k) pos.emplace(basis[k], static_cast<Eigen::Index>(k));
  for (const auto& [seq, a] : state.amplitudes()) {
    auto it = pos.find(seq);
    if (it == pos.end()) throw Error(ErrorKind::invalid_argument, "amplitude outside basis");
    v(it->second) = a;
  }
  return v;
}

DensityMatrix reduced_density_matrix(const StateVector& state, int mode) {
  const auto& shape = state.shape();
  if (mode < 0 || mode >= shape.modes())
    throw Error(ErrorKind::out_of_range, "mode " + std::to_string(mode) + " out of range");
  const int p = shape.spin_numerator();
  const int d = shape.local_dim();
  // group amplitudes by the configuration of the other modes
  std::map<std::vector<std::uint8_t>, std::vector<std::pair<int, Complex>>> groups;
  for (const auto& [seq, a] : state.amplitudes()) {
    std::vector<std::uint8_t> rest;
    rest.reserve(seq.size() - 1);
    for (std::size_t j = 0; j < seq.size(); ++j)
      if (static_cast<int>(j) != mode) rest.push_back(seq[j]);
    groups[std::move(rest)].emplace_back(local_index(seq[mode], p), a);
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& [rest, entries] : groups)
    for (const auto& [i, ai] : entries)
      for (const auto& [j, aj] : entries) rho(i, j) += ai * std::conj(aj);
  return DensityMatrix(std::move(rho));
}

double max_entanglement_deviation(const StateVector& state) {
  double worst = 0.0;
  for (int j = 0; j < state.shape().modes(); ++j)
    worst = std::max(worst, reduced_density_matrix(state, j).distance_to_maximally_mixed());
  return worst;
}

bool is_maximally_entangled(const StateVector& state, double tol) {
  return max_entanglement_deviation(state) <= tol;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (!(a.shape() == b.shape())) throw Error(ErrorKind::shape_mismatch, "inner_product");
  const auto& small = a.support_size() <= b.support_size() ? a : b;
  const auto& large = &small == &a ? b : a;
  Complex s{};
  for (const auto& [seq, x] : small.amplitudes()) {
    const Complex y = large.amplitude(seq);
    s += (&small == &a) ? std::conj(x) * y : std::conj(y) * x;
  }
  return s;
}

StateVector normalize(const StateVector& state) {
  const double n = state.norm();
  if (n == 0.0) throw Error(ErrorKind::zero_vector, "cannot normalize the zero vector");
  return state.scaled(1.0 / n);
}

std::optional<Complex> phase_if_equal(const StateVector& a, const StateVector& b, double tol) {
  if (!(a.shape() == b.shape())) throw Error(ErrorKind::shape_mismatch, "phase extraction");
  if (a.support_size() == 0 || b.support_size() == 0) return std::nullopt;
  const auto pivot = std::max_element(a.amplitudes().begin(), a.amplitudes().end(),
                                      [](const auto& x, const auto& y) { return std::abs(x.second) < std::abs(y.second); });
  const Complex c = b.amplitude(pivot->first) / pivot->second;
  const double scale = std::max(1.0, a.norm());
  if (std::abs(std::abs(c) - 1.0) > tol) return std::nullopt;
  const Complex unit = c / std::abs(c);
  if ((b - a.scaled(unit)).norm() > tol * scale) return std::nullopt;
  return unit;
}

Complex global_phase_between(const StateVector& a, const StateVector& b, double tol) {
  if (a.norm() == 0.0 || b.norm() == 0.0) throw Error(ErrorKind::zero_vector, "phase of a zero vector");
  auto c = phase_if_equal(a, b, tol);
  if (!c) throw Error(ErrorKind::not_phase_equal, "states differ by more than a global phase");
  return *c;
}

StateVector random_state(const SystemShape& shape, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  StateVector out(shape);
  for (const auto& seq : enumerate_basis(shape)) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    out.set(seq, Complex(re, im));
  }
  return normalize(out);
}

}  // namespace modalent
