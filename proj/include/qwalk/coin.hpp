#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/graph.hpp"
#include "qwalk/numeric.hpp"

namespace qwalk {

using CoinMatrix = Eigen::MatrixXcd;

/// Biased Hadamard coin
///   [ sqrt(delta)    sqrt(1-delta) ]
///   [ sqrt(1-delta) -sqrt(delta)   ]
/// Pauli X at delta = 0, Pauli Z at delta = 1, balanced at delta = 1/2.
inline CoinMatrix hadamard_biased(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw validation_error("delta: coin bias must lie in [0, 1], got " +
                           std::to_string(delta));
  }
  const double a = std::sqrt(delta);
  const double b = std::sqrt(1.0 - delta);
  CoinMatrix h(2, 2);
  h << a, b, b, -a;
  return h;
}

/**
 * One local unitary per vertex, acting on the neighborhood subspace.
 * Rows are indexed by in-coin (ascending over {c : x in n_c}) and columns by
 * next position (ascending over n_x).
 */
class CoinAssignment {
 public:
  int n_vertices() const { return static_cast<int>(coins_.size()); }

  const CoinMatrix& coin(Vertex x) const {
    if (x < 1 || x > n_vertices()) {
      throw validation_error("coin assignment: vertex index " + std::to_string(x) +
                             " outside [1, " + std::to_string(n_vertices()) + "]");
    }
    return coins_[static_cast<size_t>(x - 1)];
  }

  friend CoinAssignment assign_uniform(const Graph& g, const CoinMatrix& coin);
  friend CoinAssignment assign_per_vertex(const Graph& g,
                                          const std::map<Vertex, CoinMatrix>& coins);

 private:
  explicit CoinAssignment(std::vector<CoinMatrix> coins) : coins_(std::move(coins)) {}
  std::vector<CoinMatrix> coins_;
};

namespace detail {
inline void check_coin(const CoinMatrix& coin, const Graph& g, Vertex x) {
  if (coin.rows() != coin.cols()) {
    throw validation_error("coin at vertex " + std::to_string(x) +
                           " is not square");
  }
  if (coin.rows() != g.degree(x)) {
    throw validation_error("coin at vertex " + std::to_string(x) + " is " +
                           std::to_string(coin.rows()) + "x" +
                           std::to_string(coin.cols()) + " but the vertex degree is " +
                           std::to_string(g.degree(x)));
  }
  const double defect = unitarity_defect(coin);
  if (defect > unitarity_tol) {
    throw validation_error("coin at vertex " + std::to_string(x) +
                           " is not unitary (defect " + std::to_string(defect) + ")");
  }
}
}  // namespace detail

/// Same coin at every vertex; the coin dimension must match every degree.
inline CoinAssignment assign_uniform(const Graph& g, const CoinMatrix& coin) {
  std::vector<CoinMatrix> coins;
  coins.reserve(static_cast<size_t>(g.n_vertices()));
  for (Vertex x = 1; x <= g.n_vertices(); ++x) {
    detail::check_coin(coin, g, x);
    coins.push_back(coin);
  }
  return CoinAssignment(std::move(coins));
}

inline CoinAssignment assign_per_vertex(const Graph& g,
                                        const std::map<Vertex, CoinMatrix>& coins) {
  std::vector<CoinMatrix> list;
  list.reserve(static_cast<size_t>(g.n_vertices()));
  for (Vertex x = 1; x <= g.n_vertices(); ++x) {
    auto it = coins.find(x);
    if (it == coins.end()) {
      throw validation_error("coin assignment: no coin given for vertex " +
                             std::to_string(x));
    }
    detail::check_coin(it->second, g, x);
    list.push_back(it->second);
  }
  return CoinAssignment(std::move(list));
}

}  // namespace qwalk
