#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

/// Vertex identifier, numbered 1..n so that the flat basis index
/// n = (x-1)*d + c needs no offset juggling.
using Vertex = int;

/// A (position, coin) basis label together with its flat index.
struct BasisIndex {
  Vertex position;
  Vertex coin;
  int flat;  // 1-based, in [1, d*d]
};

/// Flat index of the basis state (x, c) on a graph of d vertices.
inline int flat_index(Vertex x, Vertex c, int d) { return (x - 1) * d + c; }

inline BasisIndex basis_from_flat(int flat, int d) {
  return BasisIndex{(flat - 1) / d + 1, (flat - 1) % d + 1, flat};
}

/**
 * Walk topology: a vertex set with one ordered out-neighborhood per vertex.
 *
 * Coin labels are vertex indices (the walker's previous position), so the
 * in-coin set of x is {c : x in n_c}. A graph is accepted only when it is
 * balanced (in-coin count equals out-degree at every vertex), which is what
 * makes the one-step evolution square and norm preserving on the physical
 * subspace. Immutable after construction.
 */
class Graph {
 public:
  /// Neighborhood lists are canonicalized to ascending order; duplicate or
  /// out-of-range entries and unbalanced topologies are rejected.
  explicit Graph(std::vector<std::vector<Vertex>> neighborhoods)
      : neighborhoods_(std::move(neighborhoods)) {
    const int n = static_cast<int>(neighborhoods_.size());
    if (n < 1) throw validation_error("graph: needs at least one vertex");
    for (int x = 1; x <= n; ++x) {
      auto& nbr = neighborhoods_[static_cast<size_t>(x - 1)];
      if (nbr.empty()) {
        throw validation_error("graph: vertex " + std::to_string(x) +
                               " has an empty neighborhood");
      }
      std::sort(nbr.begin(), nbr.end());
      for (Vertex v : nbr) {
        if (v < 1 || v > n) {
          throw validation_error("graph: vertex " + std::to_string(x) +
                                 " references neighbor " + std::to_string(v) +
                                 " outside [1, " + std::to_string(n) + "]");
        }
      }
      if (std::adjacent_find(nbr.begin(), nbr.end()) != nbr.end()) {
        throw validation_error("graph: vertex " + std::to_string(x) +
                               " has duplicate neighbors");
      }
    }
    in_coins_.resize(static_cast<size_t>(n));
    for (Vertex c = 1; c <= n; ++c) {
      for (Vertex x : neighborhoods_[static_cast<size_t>(c - 1)]) {
        in_coins_[static_cast<size_t>(x - 1)].push_back(c);
      }
    }
    for (int x = 1; x <= n; ++x) {
      auto& in = in_coins_[static_cast<size_t>(x - 1)];
      std::sort(in.begin(), in.end());
      if (in.size() != neighborhoods_[static_cast<size_t>(x - 1)].size()) {
        throw validation_error(
            "graph: unbalanced at vertex " + std::to_string(x) + " (in-coin count " +
            std::to_string(in.size()) + " != out-degree " +
            std::to_string(neighborhoods_[static_cast<size_t>(x - 1)].size()) +
            "); the global step would not be norm preserving");
      }
    }
    symmetric_ = true;
    for (Vertex x = 1; x <= n && symmetric_; ++x) {
      for (Vertex c : neighborhoods_[static_cast<size_t>(x - 1)]) {
        if (!has_edge(c, x)) {
          symmetric_ = false;
          break;
        }
      }
    }
  }

  int n_vertices() const { return static_cast<int>(neighborhoods_.size()); }

  /// Ordered out-neighbors n_x.
  const std::vector<Vertex>& neighborhood(Vertex x) const {
    check_vertex(x);
    return neighborhoods_[static_cast<size_t>(x - 1)];
  }

  /// Ordered in-coin set {c : x in n_c}; equals n_x on symmetric graphs.
  const std::vector<Vertex>& in_coins(Vertex x) const {
    check_vertex(x);
    return in_coins_[static_cast<size_t>(x - 1)];
  }

  int degree(Vertex x) const { return static_cast<int>(neighborhood(x).size()); }

  bool has_edge(Vertex from, Vertex to) const {
    check_vertex(from);
    const auto& nbr = neighborhoods_[static_cast<size_t>(from - 1)];
    return std::binary_search(nbr.begin(), nbr.end(), to);
  }

  /// True when x in n_c <=> c in n_x for all pairs. The dense completion of
  /// the evolution operator exists only in this case.
  bool symmetric_adjacency() const { return symmetric_; }

  /// Number of physical (x, c) pairs, i.e. the edge count.
  int physical_pair_count() const {
    int count = 0;
    for (const auto& in : in_coins_) count += static_cast<int>(in.size());
    return count;
  }

  void check_vertex(Vertex x) const {
    if (x < 1 || x > n_vertices()) {
      throw validation_error("graph: vertex index " + std::to_string(x) +
                             " outside [1, " + std::to_string(n_vertices()) + "]");
    }
  }

  bool operator==(const Graph& other) const {
    return neighborhoods_ == other.neighborhoods_;
  }

 private:
  std::vector<std::vector<Vertex>> neighborhoods_;
  std::vector<std::vector<Vertex>> in_coins_;
  bool symmetric_ = true;
};

/// Bounded line 1-2-...-n with a self-loop at each endpoint, so every vertex
/// has out-degree exactly 2 and the walk reflects at the walls.
inline Graph make_line(int n) {
  if (n < 2) {
    throw validation_error("make_line: size must be at least 2, got " +
                           std::to_string(n));
  }
  std::vector<std::vector<Vertex>> nbr(static_cast<size_t>(n));
  for (Vertex x = 1; x <= n; ++x) {
    if (x == 1) {
      nbr[static_cast<size_t>(x - 1)] = {1, 2};
    } else if (x == n) {
      nbr[static_cast<size_t>(x - 1)] = {n - 1, n};
    } else {
      nbr[static_cast<size_t>(x - 1)] = {x - 1, x + 1};
    }
  }
  return Graph(std::move(nbr));
}

inline Graph make_custom(std::vector<std::vector<Vertex>> neighborhoods) {
  return Graph(std::move(neighborhoods));
}

/// True iff the walker can arrive at x with coin value c, i.e. x in n_c.
inline bool is_physical(const Graph& g, Vertex x, Vertex c) {
  g.check_vertex(x);
  g.check_vertex(c);
  return g.has_edge(c, x);
}

}  // namespace qwalk
