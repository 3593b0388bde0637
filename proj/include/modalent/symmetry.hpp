#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modalent/local_ops.hpp"
#include "modalent/state.hpp"

namespace modalent {

/// Bare local element plus the scalar factor written in front of it.
struct StabilizerElement {
  GroupElement element;
  Complex declared_prefactor{1.0, 0.0};
};

/// e^{i(a l3 + b l8)} as an exact diagonal
LocalOperator diagonal_su3(double a, double b);

StabilizerElement generic_stabilizer(double alpha, long m);
StabilizerElement nonlocal_ac_stabilizer(double alpha, double beta, double gamma);

using Psi1Integers = std::array<long, 6>;  // k, l, m, n, p, q

/// Discrete diagonal family for psi1. Mode A carries [k-l-m+n+p-q] on l3.
StabilizerElement psi1_diagonal_stabilizer(const Psi1Integers& ints, double alpha);
/// As printed, with [k-l-m+n+p+q] on mode A; fails for odd q.
StabilizerElement psi1_diagonal_stabilizer_literal(const Psi1Integers& ints, double alpha);
StabilizerElement psi1_flip_stabilizer();
StabilizerElement psi1_rotation_stabilizer(double beta);

/// Four-parameter diagonal group fixing psi2 (l8 brackets solved from the sector phases).
StabilizerElement psi2_stabilizer(double alpha, double beta, double gamma, double delta);
StabilizerElement psi2_stabilizer_literal(double alpha, double beta, double gamma, double delta);

std::vector<std::string_view> stabilizer_names();
/// Named lookup. Integer parameters are rounded and must be integral.
StabilizerElement stabilizer(std::string_view name, const std::map<std::string, double>& params);

struct StabilizerCheck {
  bool stabilizes = false;
  std::optional<Complex> phase;  // c with g psi = c psi, bare element
  Complex net_phase{};           // phase * prefactor, when the phase exists
  double residual = 0.0;         // |g psi - c psi| (or |g psi - psi| if no phase)
};

StabilizerCheck verify_stabilizes(const StabilizerElement& e, const StateVector& state, double tol = 1e-9);

/// Distinct phases c (within tol) with g psi = c psi over the probes.
std::vector<Complex> topological_phases(const StateVector& state, std::span<const GroupElement> probes,
                                        double tol = 1e-9);

GroupElement lambda8_probe(int mode = 0);
std::vector<GroupElement> psi1_probes();
std::vector<GroupElement> nonlocal_ac_probes(std::span<const double> alphas);

struct LiteralFailure {
  Psi1Integers ints{};
  double alpha = 0.0;
  Complex net_phase{};
};

/// Integer tuples in [-range, range]^6 (and the given alphas) where the printed
/// psi1 family does not stabilize psi1.
std::vector<LiteralFailure> diagnose_psi1_literal(long range, std::span<const double> alphas);

}  // namespace modalent
