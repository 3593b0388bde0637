#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "modalent/local_ops.hpp"
#include "modalent/state.hpp"

namespace modalent {

/// Two-outcome instrument acting on one mode.
struct LocalInstrument {
  int mode = 0;
  LocalOperator a0 = LocalOperator::identity(3);
  LocalOperator a1 = LocalOperator::identity(3);

  /// max-abs of A0^dag A0 + A1^dag A1 - I
  double completeness_residual() const;
};

/// A0 = K / (sqrt2 |K|_op), A1 = sqrt(I - A0^dag A0).
LocalInstrument instrument_from_operator(const LocalOperator& k, int mode);
/// K = I + strength * G, G a block-diagonal complex Ginibre matrix of unit operator norm.
LocalInstrument random_instrument(std::mt19937_64& rng, int mode, double strength, int spin_numerator = 1);

inline constexpr double kMarginTol = 1e-9;
inline constexpr double kOutcomeFloor = 1e-14;

struct TrialRecord {
  std::uint64_t seed = 0;
  int mode = 0;
  std::array<double, 2> p{};
  double monotone1_before = 0.0;
  double monotone2_before = 0.0;
  std::array<double, 2> monotone1_after{};  // 0 for excluded outcomes
  std::array<double, 2> monotone2_after{};
  std::array<bool, 2> included{};
  double margin = 0.0;  // max over both monotones of sum_k p_k E_k - E
};

TrialRecord monotonicity_trial(const StateVector& state, const LocalInstrument& instrument, std::uint64_t seed = 0);

struct InvarianceDeviation {
  double i1 = 0.0;
  double i2 = 0.0;
};

/// max over the sweep of |I(g psi) - I(psi)| / max(1, |I(psi)|); no renormalization.
InvarianceDeviation invariance_sweep(std::span<const StateVector> states, std::span<const GroupElement> elements);

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) noexcept;

struct MonteCarloConfig {
  std::uint64_t master_seed = 1;
  std::size_t trials = 10000;
  double strength = 0.5;
  std::optional<StateVector> fixed_state;  // random state per trial when empty
};

struct MonteCarloSummary {
  double max_margin = 0.0;
  std::size_t trials = 0;
  std::size_t failures = 0;  // margin > kMarginTol
  std::vector<TrialRecord> records;
};

MonteCarloSummary run_monotonicity_trials(const MonteCarloConfig& config);
/// One trial of the run, regenerated from its seed.
TrialRecord run_single_trial(const MonteCarloConfig& config, std::uint64_t index);

}  // namespace modalent
