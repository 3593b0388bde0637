#include "modalent/slocc_mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include "modalent/errors.hpp"
#include "modalent/invariants.hpp"
#include "modalent/parallel.hpp"

namespace modalent {

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MODAL_ENT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min<long>(v, 1024));
  }
  return hw;
}

namespace {

double operator_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Matrix hermitian_sqrt(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double LocalInstrument::completeness_residual() const {
  const Matrix& x = a0.matrix();
  const Matrix& y = a1.matrix();
  const Matrix s = x.adjoint() * x + y.adjoint() * y;
  return (s - Matrix::Identity(s.rows(), s.cols())).cwiseAbs().maxCoeff();
}

LocalInstrument instrument_from_operator(const LocalOperator& k, int mode) {
  if (!k.is_superselection_compliant()) throw Error(ErrorKind::superselection_violation, "instrument operator");
  const double nk = operator_norm(k.matrix());
  if (!(nk > 0.0)) throw Error(ErrorKind::zero_vector, "instrument operator is zero");
  const Matrix a0 = k.matrix() / (std::numbers::sqrt2 * nk);
  const Matrix rest = Matrix::Identity(k.dim(), k.dim()) - a0.adjoint() * a0;
  return LocalInstrument{mode, LocalOperator(a0), LocalOperator(hermitian_sqrt(rest))};
}

LocalInstrument random_instrument(std::mt19937_64& rng, int mode, double strength, int p) {
  if (!(strength > 0.0 && strength < 1.0)) throw Error(ErrorKind::out_of_range, "strength must lie in (0,1)");
  const int d = p + 2;
  std::normal_distribution<double> g(0.0, 1.0 / std::numbers::sqrt2);
  Matrix gin = Matrix::Zero(d, d);
  for (int i = 0; i <= p; ++i)
    for (int j = 0; j <= p; ++j) gin(i, j) = Complex(g(rng), g(rng));
  gin(p + 1, p + 1) = Complex(g(rng), g(rng));
  gin /= operator_norm(gin);
  const Matrix k = Matrix::Identity(d, d) + strength * gin;
  return instrument_from_operator(LocalOperator(k), mode);
}

TrialRecord monotonicity_trial(const StateVector& state, const LocalInstrument& inst, std::uint64_t seed) {
  if (std::abs(state.norm_squared() - 1.0) > 1e-9) throw Error(ErrorKind::not_normalized, "trial state");
  const auto& shape = state.shape();
  if (inst.mode < 0 || inst.mode >= shape.modes()) throw Error(ErrorKind::out_of_range, "instrument mode");
  TrialRecord rec;
  rec.seed = seed;
  rec.mode = inst.mode;
  const InvariantReport before = invariant_report(state);
  rec.monotone1_before = before.monotone1;
  rec.monotone2_before = before.monotone2;
  double avg1 = 0.0, avg2 = 0.0;
  for (int k = 0; k < 2; ++k) {
    const LocalOperator& a = k == 0 ? inst.a0 : inst.a1;
    const StateVector out = apply(GroupElement::on_mode(shape, inst.mode, a), state);
    rec.p[k] = out.norm_squared();
    if (rec.p[k] < kOutcomeFloor) continue;
    rec.included[k] = true;
    const InvariantReport after = invariant_report(normalize(out));
    rec.monotone1_after[k] = after.monotone1;
    rec.monotone2_after[k] = after.monotone2;
    avg1 += rec.p[k] * after.monotone1;
    avg2 += rec.p[k] * after.monotone2;
  }
  rec.margin = std::max(avg1 - rec.monotone1_before, avg2 - rec.monotone2_before);
  return rec;
}

InvarianceDeviation invariance_sweep(std::span<const StateVector> states, std::span<const GroupElement> elements) {
  struct Ref {
    Complex i1, i2;
  };
  std::vector<Ref> refs;
  refs.reserve(states.size());
  for (const auto& s : states) {
    const auto r = invariant_report(s);
    refs.push_back({r.i1, r.i2});
  }
  auto per_element = parallel_map<InvarianceDeviation>(elements.size(), [&](std::size_t e) {
    InvarianceDeviation d;
    for (std::size_t k = 0; k < states.size(); ++k) {
      const auto r = invariant_report(apply(elements[e], states[k]));
      d.i1 = std::max(d.i1, std::abs(r.i1 - refs[k].i1) / std::max(1.0, std::abs(refs[k].i1)));
      d.i2 = std::max(d.i2, std::abs(r.i2 - refs[k].i2) / std::max(1.0, std::abs(refs[k].i2)));
    }
    return d;
  });
  InvarianceDeviation out;
  for (const auto& d : per_element) {
    out.i1 = std::max(out.i1, d.i1);
    out.i2 = std::max(out.i2, d.i2);
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

TrialRecord run_single_trial(const MonteCarloConfig& cfg, std::uint64_t index) {
  const std::uint64_t seed = trial_seed(cfg.master_seed, index);
  std::mt19937_64 rng(seed);
  const StateVector state = cfg.fixed_state ? *cfg.fixed_state : random_state(three_mode_shape(), rng);
  std::uniform_int_distribution<int> pick(0, state.shape().modes() - 1);
  const int mode = pick(rng);
  const auto inst = random_instrument(rng, mode, cfg.strength, state.shape().spin_numerator());
  return monotonicity_trial(state, inst, seed);
}

MonteCarloSummary run_monotonicity_trials(const MonteCarloConfig& cfg) {
  if (cfg.fixed_state && !(cfg.fixed_state->shape() == three_mode_shape()))
    throw Error(ErrorKind::shape_mismatch, "monotone trials need a (n=3,m=2,p=1) state");
  MonteCarloSummary s;
  s.max_margin = -std::numeric_limits<double>::infinity();
  s.records = parallel_map<TrialRecord>(cfg.trials, [&](std::size_t i) { return run_single_trial(cfg, i); });
  s.trials = s.records.size();
  for (const auto& r : s.records) {
    s.max_margin = std::max(s.max_margin, r.margin);
    if (r.margin > kMarginTol) ++s.failures;
  }
  if (s.records.empty()) s.max_margin = 0.0;
  return s;
}

}  // namespace modalent
