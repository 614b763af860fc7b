#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Single-walker amplitude vector over the flat (position, coin) basis of a
/// graph with n_vertices vertices; length is always n_vertices^2.
struct WalkerState {
  Eigen::VectorXcd amplitudes;
  int n_vertices = 0;

  int dim() const { return static_cast<int>(amplitudes.size()); }
  double norm() const { return amplitudes.norm(); }
};

/**
 * One full time step (coin then shift) as a matrix over the flat basis.
 *
 * Stored sparse: a line graph column has at most two nonzeros. dense() gives
 * the materialized matrix for fixtures and eigendecomposition. Unitarity is
 * checked on construction; instances are immutable and freely shareable.
 */
class GlobalUnitary {
 public:
  GlobalUnitary(SparseMatrixXcd matrix, int n_vertices)
      : matrix_(std::move(matrix)), n_vertices_(n_vertices) {
    if (matrix_.rows() != matrix_.cols()) {
      throw validation_error("evolution matrix must be square");
    }
    if (matrix_.rows() != static_cast<long>(n_vertices_) * n_vertices_) {
      throw validation_error("evolution matrix dimension " +
                             std::to_string(matrix_.rows()) +
                             " does not equal n_vertices^2 = " +
                             std::to_string(static_cast<long>(n_vertices_) * n_vertices_));
    }
    const double defect = unitarity_defect(matrix_);
    if (defect > unitarity_tol) {
      throw validation_error("evolution matrix is not unitary (defect " +
                             std::to_string(defect) + ")");
    }
  }

  static GlobalUnitary from_dense(const Eigen::MatrixXcd& matrix, int n_vertices) {
    return GlobalUnitary(matrix.sparseView(), n_vertices);
  }

  const SparseMatrixXcd& matrix() const { return matrix_; }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix_); }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  int n_vertices() const { return n_vertices_; }

 private:
  SparseMatrixXcd matrix_;
  int n_vertices_;
};

/**
 * Build the one-step evolution from a graph and coin assignment.
 *
 * A physical column (x, c) maps to sum_{j in n_x} A^(x)[c, j] on rows (j, x).
 * An unphysical column (x, c) maps to row (c, x) with a unit entry (dense
 * completion), which closes the unphysical subspace under the index swap and
 * keeps the matrix square and unitary on all n^2 basis states. The swap only
 * closes when adjacency is symmetric; balanced digraphs with one-way edges
 * are rejected here even though they pass graph validation.
 */
inline GlobalUnitary build_unitary(const Graph& g, const CoinAssignment& coins) {
  const int n = g.n_vertices();
  if (coins.n_vertices() != n) {
    throw validation_error("coin assignment covers " +
                           std::to_string(coins.n_vertices()) +
                           " vertices but the graph has " + std::to_string(n));
  }
  if (!g.symmetric_adjacency()) {
    throw validation_error(
        "build_unitary: the dense completion (x,c) <-> (c,x) requires every edge "
        "to be bidirectional; this graph has one-way edges");
  }
  const long dim = static_cast<long>(n) * n;
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(static_cast<size_t>(dim) + static_cast<size_t>(g.physical_pair_count()));
  for (Vertex x = 1; x <= n; ++x) {
    const auto& in = g.in_coins(x);
    const auto& out = g.neighborhood(x);
    const CoinMatrix& a = coins.coin(x);
    for (Vertex c = 1; c <= n; ++c) {
      const int col = flat_index(x, c, n) - 1;
      if (is_physical(g, x, c)) {
        const auto row_it = std::lower_bound(in.begin(), in.end(), c);
        const int ci = static_cast<int>(row_it - in.begin());
        for (int ji = 0; ji < static_cast<int>(out.size()); ++ji) {
          const Vertex j = out[static_cast<size_t>(ji)];
          triplets.emplace_back(flat_index(j, x, n) - 1, col, a(ci, ji));
        }
      } else {
        triplets.emplace_back(flat_index(c, x, n) - 1, col, Complex(1.0, 0.0));
      }
    }
  }
  SparseMatrixXcd u(dim, dim);
  u.setFromTriplets(triplets.begin(), triplets.end());
  u.makeCompressed();
  return GlobalUnitary(std::move(u), n);
}

/// Unit amplitude on basis state (x, c). Prints a warning when the pair is
/// unphysical; such states evolve in the completion subspace only.
inline WalkerState localized_state(const Graph& g, Vertex x, Vertex c) {
  g.check_vertex(x);
  g.check_vertex(c);
  if (!is_physical(g, x, c)) {
    std::cerr << "warning: basis state (x=" << x << ", c=" << c
              << ") is unphysical for this graph\n";
  }
  const int n = g.n_vertices();
  WalkerState s{Eigen::VectorXcd::Zero(static_cast<long>(n) * n), n};
  s.amplitudes[flat_index(x, c, n) - 1] = Complex(1.0, 0.0);
  return s;
}

/// (|x, c_lo> + i |x, c_hi>) / sqrt(2) over the two in-coins of x; the
/// initial condition that spreads symmetrically under a Hadamard coin.
inline WalkerState symmetric_state(const Graph& g, Vertex x) {
  g.check_vertex(x);
  const auto& in = g.in_coins(x);
  if (in.size() != 2) {
    throw validation_error("symmetric_state: vertex " + std::to_string(x) +
                           " has " + std::to_string(in.size()) +
                           " in-coins, need exactly 2");
  }
  const int n = g.n_vertices();
  WalkerState s{Eigen::VectorXcd::Zero(static_cast<long>(n) * n), n};
  s.amplitudes[flat_index(x, in[0], n) - 1] = Complex(1.0 / std::sqrt(2.0), 0.0);
  s.amplitudes[flat_index(x, in[1], n) - 1] = Complex(0.0, 1.0 / std::sqrt(2.0));
  return s;
}

inline WalkerState step(const GlobalUnitary& u, const WalkerState& s) {
  if (s.dim() != u.dim()) {
    throw validation_error("step: state dimension " + std::to_string(s.dim()) +
                           " does not match evolution dimension " +
                           std::to_string(u.dim()));
  }
  return WalkerState{u.matrix() * s.amplitudes, s.n_vertices};
}

/// States at t = 0..t_max from repeated application of the step matrix.
/// For long runs where storing every state is wasteful, loop step() instead.
inline std::vector<WalkerState> evolve_series(const GlobalUnitary& u,
                                              const WalkerState& s0, long t_max) {
  if (t_max < 0) {
    throw validation_error("evolve_series: t_max must be >= 0");
  }
  std::vector<WalkerState> states;
  states.reserve(static_cast<size_t>(t_max) + 1);
  states.push_back(s0);
  for (long t = 1; t <= t_max; ++t) {
    states.push_back(step(u, states.back()));
  }
  return states;
}

}  // namespace qwalk
