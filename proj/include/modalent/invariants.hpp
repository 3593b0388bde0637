#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "modalent/state.hpp"

namespace modalent {

using Mat2 = Eigen::Matrix2cd;

/// sigma_y = [[0,-i],[i,0]]
const Mat2& sigma_y();

/// Two-particle amplitude blocks, rows/columns ordered (up, down).
/// ab(i,j) = m_{ij0}, bc(j,k) = m_{0jk}, ac(i,k) = m_{i0k}.
struct PairBlocks {
  Mat2 ab = Mat2::Zero();
  Mat2 bc = Mat2::Zero();
  Mat2 ac = Mat2::Zero();
};

PairBlocks pair_blocks(const StateVector& state);
StateVector state_from_blocks(const PairBlocks& blocks);

struct InvariantReport {
  Complex i_ab, i_bc, i_ac;  // pair determinants
  Complex i1, i2;
  double monotone1 = 0.0;  // |I1|^(1/3)
  double monotone2 = 0.0;  // |I2|^(2/3)
  double i_a_bc = 0.0, i_b_ac = 0.0, i_c_ab = 0.0;
  Mat2 w = Mat2::Zero();  // M_AB sy M_BC sy M_AC^T sy
};

Complex i2_polynomial(const PairBlocks& b);
double unitary_invariant_a_bc(const PairBlocks& b);
double unitary_invariant_b_ac(const PairBlocks& b);
double unitary_invariant_c_ab(const PairBlocks& b);
Mat2 trace_word_matrix(const PairBlocks& b);

InvariantReport invariant_report(const PairBlocks& blocks);
InvariantReport invariant_report(const StateVector& state);

// ---- transvection engine -------------------------------------------------

enum class Variable { x, y, z };
enum class VariablePair { xy, yz, xz };

Variable parse_variable(std::string_view text);
VariablePair parse_variable_pair(std::string_view text);

/// Sum of bilinear blocks K_uv(i,j) u_i v_j over ordered variable pairs.
class BilinearForm {
 public:
  using Key = std::pair<Variable, Variable>;

  BilinearForm() = default;
  /// The state form: (x,y) -> M_AB, (x,z) -> M_AC, (y,z) -> M_BC; degree 1.
  static BilinearForm from_blocks(const PairBlocks& blocks);
  static BilinearForm from_state(const StateVector& state);

  void add_block(Variable u, Variable v, const Mat2& k);
  const std::map<Key, Mat2>& blocks() const noexcept { return blocks_; }
  std::optional<Mat2> block(Variable u, Variable v) const;
  /// Block for (u,v), transposing a stored (v,u) block; zero if neither exists.
  Mat2 oriented(Variable u, Variable v) const;

  int degree() const noexcept { return degree_; }
  void set_degree(int d) noexcept { degree_ = d; }
  bool is_zero(double tol = 0.0) const;

 private:
  std::map<Key, Mat2> blocks_;
  int degree_ = 0;
};

/// Contracts both variables of the pair: Tr(A_uv^T sy B_uv sy).
Complex transvect_double(const BilinearForm& a, const BilinearForm& b, VariablePair pair);
/// Contracts one shared variable, leaving a bilinear form in the remaining ones.
BilinearForm transvect_single(const BilinearForm& a, const BilinearForm& b, Variable v);

struct TraceWordResult {
  Complex trace;  // Tr W^n
  Mat2 w;         // W itself (n = 1)
  Complex f1, g1, k1, l1;
};

TraceWordResult trace_word(const StateVector& state, int n);
/// Tr W^n from Newton's identities in Tr W and det W.
Complex trace_word_newton(Complex trace_w, Complex det_w, int n);
/// max of |G1 K1 - (I1 + F1 L1)| and |Tr W^k - P_k| for k = 1..n
double generator_relation_check(const StateVector& state, int n);

/// Ratio I(after)/I(before); empty when the value before is structurally zero.
struct ScaleFactors {
  std::optional<Complex> i_ab;
  std::optional<Complex> i_ac;
};

/// Factors of I_AB and I_AC under I x exp(a l8) x exp(a l8).
ScaleFactors localized_scenario_check(const StateVector& state, double alpha);
/// Factor of I2 under exp(a l8) on all three modes.
std::optional<Complex> full_lambda8_i2_factor(const StateVector& state, double alpha);

}  // namespace modalent
