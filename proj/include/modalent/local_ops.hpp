#pragma once

#include <array>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "modalent/state.hpp"

namespace modalent {

using Matrix = Eigen::MatrixXcd;

/// Single-mode operator in the (levels..., vacancy) basis.
class LocalOperator {
 public:
  explicit LocalOperator(Matrix m);
  static LocalOperator identity(int dim);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  Complex determinant() const { return m_.determinant(); }
  // occupied block and vacancy do not mix
  bool is_superselection_compliant(double tol = kZeroTol) const;
  bool is_unitary(double tol = 1e-10) const;
  bool has_unit_determinant(double tol = 1e-9) const;

  LocalOperator operator*(const LocalOperator& rhs) const;
  LocalOperator adjoint() const { return LocalOperator(m_.adjoint()); }

 private:
  Matrix m_;
};

/// Scaling-and-squaring with a [13/13] Pade approximant.
Matrix matrix_exp(const Matrix& a);
LocalOperator matrix_exp(const LocalOperator& a);

enum class GroupKind { slocc, su, neither };
std::string_view to_string(GroupKind kind) noexcept;

/// Tensor product of one operator per mode. Kind is derived from the factors.
class GroupElement {
 public:
  explicit GroupElement(std::vector<LocalOperator> per_mode);
  static GroupElement identity(const SystemShape& shape);
  static GroupElement on_mode(const SystemShape& shape, int mode, const LocalOperator& op);

  int modes() const noexcept { return static_cast<int>(factors_.size()); }
  const LocalOperator& factor(int mode) const { return factors_.at(static_cast<std::size_t>(mode)); }
  const std::vector<LocalOperator>& factors() const noexcept { return factors_; }
  GroupKind kind() const noexcept { return kind_; }
  bool is_superselection_compliant(double tol = kZeroTol) const;

  /// (this o rhs): rhs acts first.
  GroupElement compose(const GroupElement& rhs) const;
  GroupElement adjoint() const;

 private:
  std::vector<LocalOperator> factors_;
  GroupKind kind_;
};

/// lambda_1, lambda_2, lambda_3 or lambda_8 (3x3).
LocalOperator gell_mann(int index);

struct GellMannCoefficients {
  Complex l1{}, l2{}, l3{}, l8{};
};

/// exp(a l1 + b l2 + c l3 + d l8)
LocalOperator exp_gell_mann(const GellMannCoefficients& c);
GroupElement make_slocc_element(std::span<const GellMannCoefficients> per_mode);

/// Applies the tensor product. The result is not renormalized.
StateVector apply(const GroupElement& g, const StateVector& state);

/// diag(r e^{i phi} (p+1 times), r^{-(p+1)} e^{-(p+1) i phi}).
LocalOperator vacancy_scaling(double r, double phi, int spin_numerator);
inline LocalOperator vacancy_scaling(double r, double phi) { return vacancy_scaling(r, phi, 1); }

/// diag(e^{-(p+1)a}, e^{(p+3)a}, e^{a} (p-1 times), e^{-(p+1)a}); needs p >= 1.
LocalOperator level_contraction(Complex alpha, int spin_numerator);

/// Random element of the given kind on `shape`; generators are traceless and
/// block-diagonal with coefficients of standard deviation `spread`.
GroupElement random_element(GroupKind kind, std::mt19937_64& rng, double spread = 0.5,
                            const SystemShape& shape = three_mode_shape());

}  // namespace modalent
