#pragma once

// Shared helpers and independent oracles for the unit tests.

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "modalent/classification.hpp"
#include "modalent/local_ops.hpp"
#include "modalent/state.hpp"

namespace testing_support {

using modalent::Complex;

// amplitudes (k+1) + i(-1)^k k/2, k in basis order, normalized
inline modalent::StateVector frozen_state() {
  const auto basis = modalent::enumerate_basis(modalent::three_mode_shape());
  modalent::StateVector s(modalent::three_mode_shape());
  for (int k = 0; k < 12; ++k) s.set(basis[k], Complex(k + 1, (k % 2 ? -0.5 : 0.5) * k));
  return modalent::normalize(s);
}

// full 27-dim tensor vector, local index order (u, d, 0) per mode
inline Eigen::VectorXcd to_tensor(const modalent::StateVector& s) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(27);
  for (const auto& [seq, a] : s.amplitudes()) {
    int idx = 0;
    for (int j = 0; j < 3; ++j) idx = idx * 3 + modalent::local_index(seq[j], 1);
    v(idx) = a;
  }
  return v;
}

inline Eigen::MatrixXcd kron3(const modalent::GroupElement& g) {
  Eigen::MatrixXcd ab = Eigen::kroneckerProduct(g.factor(0).matrix(), g.factor(1).matrix()).eval();
  return Eigen::kroneckerProduct(ab, g.factor(2).matrix()).eval();
}

// dense reduced density matrix of mode j from the 27-vector
inline Eigen::Matrix3cd dense_rdm(const Eigen::VectorXcd& v, int mode) {
  Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();
  for (int a = 0; a < 27; ++a)
    for (int b = 0; b < 27; ++b) {
      std::array<int, 3> da{a / 9, (a / 3) % 3, a % 3}, db{b / 9, (b / 3) % 3, b % 3};
      bool rest_equal = true;
      for (int j = 0; j < 3; ++j)
        if (j != mode && da[j] != db[j]) rest_equal = false;
      if (rest_equal) rho(da[mode], db[mode]) += v(a) * std::conj(v(b));
    }
  return rho;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline modalent::StateVector random_canonical_form_state(std::mt19937_64& rng) {
  std::array<double, 9> r{};
  double s = 0.0;
  for (auto& x : r) {
    x = uniform(rng, 0.05, 1.0);
    s += x * x;
  }
  for (auto& x : r) x /= std::sqrt(s);
  return modalent::canonical_state(r, uniform(rng, 0, 6.28), uniform(rng, 0, 6.28), uniform(rng, 0, 6.28));
}

inline modalent::StateVector random_nonlocal_ac(std::mt19937_64& rng, std::array<double, 4>* out = nullptr) {
  std::array<double, 4> r{};
  double s = 0.0;
  for (auto& x : r) {
    x = uniform(rng, 0.05, 1.0);
    s += x * x;
  }
  for (auto& x : r) x /= std::sqrt(s);
  if (out) *out = r;
  return modalent::family_nonlocal_ac(r[0], r[1], r[2], r[3], uniform(rng, 0, 6.28));
}

}  // namespace testing_support
