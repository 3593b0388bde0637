#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "modalent/local_ops.hpp"
#include "modalent/state.hpp"

namespace modalent {

/// m(p+2) == n(p+1), in integers.
bool feasible(int n, int m, int p);

/// Base pattern (0,1,...,p+1) repeated r times.
std::vector<std::uint8_t> sequence_pattern(int r, int p);
/// Cyclic right shift of a sequence by k positions (k taken mod the period p+2).
std::vector<std::uint8_t> shifted_pattern(const std::vector<std::uint8_t>& base, int k, int p);

/// Equal superposition of the p+2 cyclic shifts of the pattern on
/// n = r(p+2) modes with m = r(p+1) particles.
StateVector build_psi_sigma(int r, int p, std::uint64_t cap = kDimensionCap);

/// True iff the conditional rest-states on the occupied levels of `mode`
/// span at most one dimension.
bool single_mode_bipartition_local(const StateVector& state, int mode, double tol = 1e-10);

struct ContractionWitness {
  double norm_ratio = 1.0;
  double expected_norm_ratio = 1.0;  // e^{-(p+1) Re a}
  std::optional<Complex> phase;      // when g psi is proportional to psi
  Complex expected_phase{1.0, 0.0};  // e^{-(p+1) i Im a}
  bool counterexample = false;
  GroupElement element = GroupElement::identity(SystemShape(1, 0, 0));
};

/// Applies the level contraction, rotated onto the occupied direction of
/// `mode`, and compares with the predicted scaling.
ContractionWitness contraction_witness(const StateVector& state, int mode, Complex alpha);

struct ScanRow {
  int n = 0, m = 0, p = 0;
  bool feasible = false;
  bool constructed = false;
  bool verified = false;
};

std::vector<ScanRow> existence_scan(int n_lo, int n_hi, int p_lo, int p_hi, std::uint64_t cap = kDimensionCap);

}  // namespace modalent
