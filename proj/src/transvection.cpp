#include <cmath>

#include "modalent/errors.hpp"
#include "modalent/invariants.hpp"
#include "modalent/local_ops.hpp"

namespace modalent {

Variable parse_variable(std::string_view t) {
  if (t == "x") return Variable::x;
  if (t == "y") return Variable::y;
  if (t == "z") return Variable::z;
  throw Error(ErrorKind::invalid_argument, "unknown variable '" + std::string(t) + "'");
}

VariablePair parse_variable_pair(std::string_view t) {
  if (t == "xy") return VariablePair::xy;
  if (t == "yz") return VariablePair::yz;
  if (t == "xz") return VariablePair::xz;
  throw Error(ErrorKind::invalid_argument, "unknown variable pair '" + std::string(t) + "'");
}

BilinearForm BilinearForm::from_blocks(const PairBlocks& b) {
  BilinearForm f;
  f.add_block(Variable::x, Variable::y, b.ab);
  f.add_block(Variable::x, Variable::z, b.ac);
  f.add_block(Variable::y, Variable::z, b.bc);
  f.degree_ = 1;
  return f;
}

BilinearForm BilinearForm::from_state(const StateVector& s) { return from_blocks(pair_blocks(s)); }

void BilinearForm::add_block(Variable u, Variable v, const Mat2& k) {
  auto [it, inserted] = blocks_.try_emplace({u, v}, k);
  if (!inserted) it->second += k;
}

std::optional<Mat2> BilinearForm::block(Variable u, Variable v) const {
  auto it = blocks_.find({u, v});
  if (it == blocks_.end()) return std::nullopt;
  return it->second;
}

Mat2 BilinearForm::oriented(Variable u, Variable v) const {
  if (auto k = block(u, v)) return *k;
  if (auto k = block(v, u)) return k->transpose();
  return Mat2::Zero();
}

bool BilinearForm::is_zero(double tol) const {
  for (const auto& [key, k] : blocks_)
    if (k.cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

namespace {

std::pair<Variable, Variable> split(VariablePair p) {
  switch (p) {
    case VariablePair::xy: return {Variable::x, Variable::y};
    case VariablePair::yz: return {Variable::y, Variable::z};
    case VariablePair::xz: return {Variable::x, Variable::z};
  }
  throw Error(ErrorKind::invalid_argument, "variable pair");
}

}  // namespace

Complex transvect_double(const BilinearForm& a, const BilinearForm& b, VariablePair pair) {
  const auto [u, v] = split(pair);
  const Mat2& sy = sigma_y();
  return (a.oriented(u, v).transpose() * sy * b.oriented(u, v) * sy).trace();
}

BilinearForm transvect_single(const BilinearForm& a, const BilinearForm& b, Variable x) {
  // a: blocks turned so that x is the column index; b: so that x is the row index
  std::vector<std::pair<Variable, Mat2>> left, right;
  for (const auto& [key, k] : a.blocks()) {
    if (key.second == x && key.first != x) left.emplace_back(key.first, k);
    if (key.first == x && key.second != x) left.emplace_back(key.second, k.transpose());
  }
  for (const auto& [key, k] : b.blocks()) {
    if (key.first == x && key.second != x) right.emplace_back(key.second, k);
    if (key.second == x && key.first != x) right.emplace_back(key.first, k.transpose());
  }
  BilinearForm out;
  const Mat2& sy = sigma_y();
  for (const auto& [u, ka] : left)
    for (const auto& [v, kb] : right) out.add_block(u, v, ka * sy * kb);
  out.set_degree(a.degree() + b.degree());
  return out;
}

Complex trace_word_newton(Complex e1, Complex e2, int n) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "power must be positive");
  // power sums of the two eigenvalues
  Complex prev2 = 2.0;  // p0
  Complex prev1 = e1;   // p1
  for (int k = 2; k <= n; ++k) {
    const Complex next = e1 * prev1 - e2 * prev2;
    prev2 = prev1;
    prev1 = next;
  }
  return prev1;
}

TraceWordResult trace_word(const StateVector& state, int n) {
  if (n < 1 || n > 8) throw Error(ErrorKind::invalid_argument, "trace word power must be in 1..8");
  const Mat2 w = trace_word_matrix(pair_blocks(state));
  Mat2 power = w;
  for (int k = 1; k < n; ++k) power = power * w;
  return TraceWordResult{power.trace(), w, w(0, 0), w(0, 1), w(1, 0), w(1, 1)};
}

double generator_relation_check(const StateVector& state, int n) {
  if (n < 1 || n > 8) throw Error(ErrorKind::invalid_argument, "trace word power must be in 1..8");
  const PairBlocks b = pair_blocks(state);
  const InvariantReport r = invariant_report(b);
  const Mat2& w = r.w;
  const Complex f1 = w(0, 0), g1 = w(0, 1), k1 = w(1, 0), l1 = w(1, 1);
  double worst = std::abs(g1 * k1 - (r.i1 + f1 * l1));
  // Tr W = i I2, det W = -I1
  const Complex e1 = Complex(0.0, 1.0) * r.i2;
  const Complex e2 = -r.i1;
  Mat2 power = Mat2::Identity();
  for (int k = 1; k <= n; ++k) {
    power = power * w;
    worst = std::max(worst, std::abs(power.trace() - trace_word_newton(e1, e2, k)));
  }
  return worst;
}

namespace {

constexpr double kPolyZero = 1e-20;

std::optional<Complex> ratio(Complex after, Complex before) {
  if (std::abs(before) < kPolyZero) return std::nullopt;
  return after / before;
}

}  // namespace

ScaleFactors localized_scenario_check(const StateVector& state, double alpha) {
  const LocalOperator e8 = exp_gell_mann({0.0, 0.0, 0.0, alpha});
  const GroupElement g({LocalOperator::identity(3), e8, e8});
  const InvariantReport before = invariant_report(state);
  const InvariantReport after = invariant_report(apply(g, state));
  return ScaleFactors{ratio(after.i_ab, before.i_ab), ratio(after.i_ac, before.i_ac)};
}

std::optional<Complex> full_lambda8_i2_factor(const StateVector& state, double alpha) {
  const LocalOperator e8 = exp_gell_mann({0.0, 0.0, 0.0, alpha});
  const GroupElement g({e8, e8, e8});
  return ratio(invariant_report(apply(g, state)).i2, invariant_report(state).i2);
}

}  // namespace modalent
