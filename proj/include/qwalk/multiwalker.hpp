#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "qwalk/entanglement.hpp"
#include "qwalk/evolution.hpp"

namespace qwalk {

inline int pair_count(int n_modes) { return n_modes * (n_modes + 1) / 2; }

/// Storage index of the unordered mode pair {k, l}, k <= l, 1-based modes.
inline int pair_index(int k, int l, int n_modes) {
  if (k > l) std::swap(k, l);
  return (k - 1) * n_modes - (k - 1) * (k - 2) / 2 + (l - k);
}

/**
 * Two-photon state as Fock amplitudes over unordered mode pairs: coeff {k,l}
 * with k < l is the amplitude of |1_k 1_l>, coeff {k,k} the amplitude of
 * |2_k>. Symmetry is structural, not enforced after the fact.
 */
struct TwoWalkerState {
  int n_modes = 0;
  Eigen::VectorXcd coeffs;

  static TwoWalkerState zero(int n_modes) {
    if (n_modes < 1) throw validation_error("two-walker state needs at least one mode");
    return TwoWalkerState{n_modes, Eigen::VectorXcd::Zero(pair_count(n_modes))};
  }

  Complex& at(int k, int l) { return coeffs[pair_index(k, l, n_modes)]; }
  Complex at(int k, int l) const { return coeffs[pair_index(k, l, n_modes)]; }
  double norm() const { return coeffs.norm(); }

  void check_mode(int m) const {
    if (m < 1 || m > n_modes) {
      throw validation_error("mode index " + std::to_string(m) + " outside [1, " +
                             std::to_string(n_modes) + "]");
    }
  }
};

/// Normalized Fock input a_i' a_j' |0>; i = j gives the doubly occupied mode.
inline TwoWalkerState two_photon_input(int n_modes, int i, int j) {
  TwoWalkerState s = TwoWalkerState::zero(n_modes);
  s.check_mode(i);
  s.check_mode(j);
  s.at(i, j) = Complex(1.0, 0.0);
  return s;
}

/**
 * Substitute a_k' -> sum_p U[p][k] a_p' in every creation-operator monomial;
 * column k of the evolution matrix holds the output amplitudes of a photon
 * entering mode k, exactly as in the single-walker step. With B the
 * symmetric operator-coefficient matrix of the state this is B -> U B U^T,
 * a bilinear (and in the state coefficients linear) map that composes in
 * operator order. sqrt(2) factors convert between Fock amplitudes and
 * operator coefficients on doubly occupied modes.
 */
inline TwoWalkerState evolve_two(const Eigen::MatrixXcd& u, const TwoWalkerState& s) {
  const int n = s.n_modes;
  if (u.rows() != n || u.cols() != n) {
    throw validation_error("evolve_two: unitary is " + std::to_string(u.rows()) + "x" +
                           std::to_string(u.cols()) + " but the state has " +
                           std::to_string(n) + " modes");
  }
  const double rt2 = std::sqrt(2.0);
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    b(k - 1, k - 1) = s.at(k, k) / rt2;
    for (int l = k + 1; l <= n; ++l) {
      b(k - 1, l - 1) = s.at(k, l) / 2.0;
      b(l - 1, k - 1) = b(k - 1, l - 1);
    }
  }
  const Eigen::MatrixXcd bt = u * b * u.transpose();
  TwoWalkerState out = TwoWalkerState::zero(n);
  for (int k = 1; k <= n; ++k) {
    out.at(k, k) = rt2 * bt(k - 1, k - 1);
    for (int l = k + 1; l <= n; ++l) {
      out.at(k, l) = bt(k - 1, l - 1) + bt(l - 1, k - 1);
    }
  }
  return out;
}

inline TwoWalkerState evolve_two(const GlobalUnitary& u, const TwoWalkerState& s) {
  return evolve_two(u.dense(), s);
}

/**
 * Result of conditioning the evolved pair (i, j) on finding exactly one
 * photon at the measured mode.
 *
 * raw_amplitudes[k] is the unnormalized conditional map
 * U[m][i] U[k][j] + U[m][j] U[k][i] over all k, including k = m (whose entry
 * corresponds to both photons landing in m and is excluded from the
 * conditioning). probability is reported as zero and the conditional state
 * is absent when the outcome weight falls below 1e-12.
 */
struct PostSelectionResult {
  int mode = 0;
  double probability = 0.0;
  std::optional<Eigen::VectorXcd> conditional_state;  // normalized, zero at `mode`
  Eigen::VectorXcd raw_amplitudes;
};

inline PostSelectionResult post_select(const Eigen::MatrixXcd& u, int i, int j, int m) {
  const int n = static_cast<int>(u.rows());
  if (u.rows() != u.cols()) throw validation_error("post_select: unitary must be square");
  auto check = [n](int mode) {
    if (mode < 1 || mode > n) {
      throw validation_error("mode index " + std::to_string(mode) + " outside [1, " +
                             std::to_string(n) + "]");
    }
  };
  check(i);
  check(j);
  check(m);
  PostSelectionResult result;
  result.mode = m;
  result.raw_amplitudes.resize(n);
  for (int k = 1; k <= n; ++k) {
    result.raw_amplitudes[k - 1] =
        u(m - 1, i - 1) * u(k - 1, j - 1) + u(m - 1, j - 1) * u(k - 1, i - 1);
  }
  Eigen::VectorXcd conditional = result.raw_amplitudes;
  conditional[m - 1] = Complex(0.0, 0.0);
  // the evolved a_i' a_j' |0> polynomial has squared Fock norm 2 when i = j
  const double input_norm_sq = (i == j) ? 2.0 : 1.0;
  const double weight = conditional.squaredNorm() / input_norm_sq;
  if (weight < 1e-12) {
    result.probability = 0.0;
    return result;
  }
  result.probability = weight;
  result.conditional_state = conditional / conditional.norm();
  return result;
}

inline PostSelectionResult post_select(const GlobalUnitary& u, int i, int j, int m) {
  return post_select(u.dense(), i, j, m);
}

/// Meyer-Wallach measure over per-mode occupation subsystems (qutrits for
/// two photons): 1 - (1/N) sum_i tr(rho_i^2), each rho_i by explicit partial
/// trace over the pair basis.
inline double meyer_wallach_two(const TwoWalkerState& s) {
  detail::check_normalized(s.coeffs, "meyer_wallach_two");
  const int n = s.n_modes;
  double purity_sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    // group amplitudes by the basis state of the remaining modes; the key is
    // the photon configuration outside mode i
    std::map<std::pair<int, int>, std::array<Complex, 3>> rest;
    for (int k = 1; k <= n; ++k) {
      for (int l = k; l <= n; ++l) {
        const Complex c = s.at(k, l);
        int occupation = (k == i ? 1 : 0) + (l == i ? 1 : 0);
        std::pair<int, int> key{0, 0};
        if (occupation == 0) key = {k, l};
        if (occupation == 1) key = {k == i ? l : k, 0};
        auto& slot = rest.try_emplace(key, std::array<Complex, 3>{}).first->second;
        slot[static_cast<size_t>(occupation)] += c;
      }
    }
    Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();
    for (const auto& [key, phi] : rest) {
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          rho(a, b) += phi[static_cast<size_t>(a)] * std::conj(phi[static_cast<size_t>(b)]);
        }
      }
    }
    purity_sum += (rho * rho).trace().real();
  }
  return 1.0 - purity_sum / static_cast<double>(n);
}

}  // namespace qwalk
