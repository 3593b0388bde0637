#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace modalent {

using Complex = std::complex<double>;

/// Amplitudes below this modulus count as structurally zero.
inline constexpr double kZeroTol = 1e-12;

/// Largest basis we are willing to materialize densely.
inline constexpr std::uint64_t kDimensionCap = 1'000'000;

/// n modes, m particles, spin p/2 (p+1 internal levels per occupied mode).
class SystemShape {
 public:
  SystemShape(int modes, int particles, int spin_numerator);

  int modes() const noexcept { return modes_; }
  int particles() const noexcept { return particles_; }
  int spin_numerator() const noexcept { return spin_; }
  int levels() const noexcept { return spin_ + 1; }
  int local_dim() const noexcept { return spin_ + 2; }

  // C(n,m)*(p+1)^m, saturates at UINT64_MAX
  std::uint64_t dimension() const noexcept;
  std::string describe() const;

  friend bool operator==(const SystemShape&, const SystemShape&) = default;

 private:
  int modes_;
  int particles_;
  int spin_;
};

/// The three-mode, two-particle, spin-1/2 system.
SystemShape three_mode_shape();

// level k (1..p+1) -> k-1, vacancy (0) -> p+1
int local_index(int symbol, int spin_numerator);
int symbol_at(int local, int spin_numerator);

class OccupationSequence {
 public:
  OccupationSequence() = default;
  explicit OccupationSequence(std::vector<std::uint8_t> symbols) : symbols_(std::move(symbols)) {}
  OccupationSequence(std::initializer_list<int> symbols);

  // "ud0" style; u = 1, d = 2, 0 = empty
  static OccupationSequence from_alias(std::string_view text);

  std::size_t size() const noexcept { return symbols_.size(); }
  std::uint8_t operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<std::uint8_t>& symbols() const noexcept { return symbols_; }
  int occupied() const noexcept;

  /// Alias text; only valid when every symbol is 0, 1 or 2.
  std::string alias() const;
  std::string describe() const;

  auto operator<=>(const OccupationSequence&) const = default;
  bool operator==(const OccupationSequence&) const = default;

 private:
  std::vector<std::uint8_t> symbols_;
};

bool admissible(const OccupationSequence& seq, const SystemShape& shape) noexcept;

/// Sparse amplitude map. Exact zeros are never stored.
class StateVector {
 public:
  using Amplitudes = std::map<OccupationSequence, Complex>;

  explicit StateVector(SystemShape shape);
  /// Convenience for p = 1 kets written as aliases, e.g. {{"uu0", 1.0}}.
  StateVector(SystemShape shape, std::initializer_list<std::pair<std::string_view, Complex>> terms);

  const SystemShape& shape() const noexcept { return shape_; }
  const Amplitudes& amplitudes() const noexcept { return amps_; }
  std::size_t support_size() const noexcept { return amps_.size(); }

  Complex amplitude(const OccupationSequence& seq) const;
  Complex amplitude(std::string_view alias) const;

  void set(const OccupationSequence& seq, Complex value);
  void add(const OccupationSequence& seq, Complex value);

  double norm_squared() const noexcept;
  double norm() const noexcept;

  StateVector scaled(Complex c) const;
  StateVector operator+(const StateVector& rhs) const;
  StateVector operator-(const StateVector& rhs) const;

  /// Relabels modes: mode j of the result is mode order[j] of this state.
  StateVector permuted_modes(std::span<const int> order) const;

 private:
  void check(const OccupationSequence& seq) const;

  SystemShape shape_;
  Amplitudes amps_;
};

StateVector basis_state(const SystemShape& shape, const OccupationSequence& seq);

/// Dense fast path for the (3,2,1) system, in enumerate_basis order.
using Dense12 = Eigen::Matrix<Complex, 12, 1>;
Dense12 to_dense12(const StateVector& state);
StateVector from_dense12(const Dense12& v);

class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd rho);

  int dim() const noexcept { return static_cast<int>(rho_.rows()); }
  const Eigen::MatrixXcd& matrix() const noexcept { return rho_; }
  Complex trace() const { return rho_.trace(); }
  double purity() const;
  double hermiticity_error() const;
  double min_eigenvalue() const;
  // max-abs distance to Identity/dim
  double distance_to_maximally_mixed() const;
  bool is_valid(double tol = 1e-10) const;

 private:
  Eigen::MatrixXcd rho_;
};

std::vector<OccupationSequence> enumerate_basis(const SystemShape& shape);
Eigen::VectorXcd to_dense(const StateVector& state, const std::vector<OccupationSequence>& basis);

DensityMatrix reduced_density_matrix(const StateVector& state, int mode);
bool is_maximally_entangled(const StateVector& state, double tol = kZeroTol);
double max_entanglement_deviation(const StateVector& state);

Complex inner_product(const StateVector& a, const StateVector& b);
StateVector normalize(const StateVector& state);

/// Unit c with b = c*a. Throws not_phase_equal otherwise.
Complex global_phase_between(const StateVector& a, const StateVector& b, double tol = 1e-9);
/// Same test without throwing.
std::optional<Complex> phase_if_equal(const StateVector& a, const StateVector& b, double tol = 1e-9);

/// Haar-like random pure state over the whole basis.
StateVector random_state(const SystemShape& shape, std::mt19937_64& rng);

}  // namespace modalent
