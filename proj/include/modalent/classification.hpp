#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "modalent/local_ops.hpp"
#include "modalent/state.hpp"

namespace modalent {

/// Nine-slot normal form reached by local unitaries:
///   r1 uu0 + r2 dd0 + r3 d0d + r4 u0u + r5 e^{i phi} u0d
///   + r6 0dd + r7 0uu + r8 e^{i phi'} 0du + r9 e^{i theta} 0ud
struct CanonicalParams {
  std::array<double, 9> r{};
  double phi = 0.0;
  double phi_prime = 0.0;
  double theta = 0.0;
  GroupElement reducing = GroupElement::identity(three_mode_shape());
  double residual = 0.0;  // |U psi - canonical_state(...)|
};

StateVector canonical_state(const std::array<double, 9>& r, double phi, double phi_prime, double theta);
CanonicalParams canonical_form(const StateVector& state);

enum class ModePair { ab, bc, ac };
enum class Bipartition { a_bc, b_ac, c_ab };

struct BellProfile {
  std::array<bool, 3> pair_nonlocal{};          // AB, BC, AC
  std::array<bool, 3> bipartition_nonlocal{};   // A|BC, B|AC, C|AB
  bool tri_local = true;

  bool pair(ModePair p) const { return pair_nonlocal[static_cast<int>(p)]; }
  bool bipartition(Bipartition b) const { return bipartition_nonlocal[static_cast<int>(b)]; }
  friend bool operator==(const BellProfile&, const BellProfile&) = default;
};

inline constexpr double kBellTol = 1e-10;

BellProfile bell_profile(const StateVector& state, double tol = kBellTol);
/// Short label such as "tri-local" or "A|BC,C|AB".
std::string describe(const BellProfile& profile);

// ---- named families ------------------------------------------------------

StateVector family_local_all(double r1, double r2, double r3);
StateVector family_nonlocal_a(double r1, double r2, double r3);
StateVector family_nonlocal_ac(double r1, double r2, double r3, double r4, double phi);
StateVector family_nonlocal_all(double r1, double r2, double r3, double r4, double r5, double theta);
StateVector family_s1(double r);
StateVector family_s2(double r, double theta);
StateVector psi1();
StateVector psi2();

std::vector<std::string_view> family_names();
/// Dispatch by name; params in the order of the matching constructor.
StateVector family(std::string_view name, std::span<const double> params);

// ---- pair projections and CHSH -------------------------------------------

struct PairProjection {
  std::optional<Eigen::Vector4cd> state;  // |ij>, index 2i+j, up = 0
  double weight = 0.0;
};

PairProjection pair_projection(const StateVector& state, ModePair pair);
ModePair parse_mode_pair(std::string_view text);
std::string_view to_string(ModePair pair) noexcept;

double chsh_value(const Eigen::Vector4cd& two_qubit_state);
double chsh_value(const Eigen::Matrix4cd& rho);
/// 2|a00 a11 - a01 a10| for a normalized two-qubit state
double concurrence(const Eigen::Vector4cd& two_qubit_state);

}  // namespace modalent
