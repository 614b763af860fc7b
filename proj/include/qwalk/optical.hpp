#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qwalk/evolution.hpp"

namespace qwalk {

/// A block of optics acting on one bundle of modes (listed 1-based,
/// ascending); identity is implied on all modes outside every bundle.
struct CoinBundle {
  std::vector<int> modes;
  Eigen::MatrixXcd matrix;
};

struct CoinLayer {
  std::vector<CoinBundle> bundles;
};

/// Mode permutation: map[m-1] is the output mode fed by input mode m.
struct StepLayer {
  std::vector<int> map;
};

using CircuitLayer = std::variant<CoinLayer, StepLayer>;

/// Linear-optical network over n_modes spatial modes; layers apply in list
/// order, so the total transfer matrix is L_last * ... * L_first.
struct OpticalCircuit {
  int n_modes = 0;
  std::vector<CircuitLayer> layers;
};

namespace detail {

inline SparseMatrixXcd layer_matrix(const CircuitLayer& layer, int n_modes) {
  std::vector<Eigen::Triplet<Complex>> triplets;
  if (const auto* coin = std::get_if<CoinLayer>(&layer)) {
    std::vector<char> covered(static_cast<size_t>(n_modes), 0);
    for (const auto& bundle : coin->bundles) {
      const int b = static_cast<int>(bundle.modes.size());
      if (bundle.matrix.rows() != b || bundle.matrix.cols() != b) {
        throw validation_error("circuit: bundle matrix dimension does not match its mode count");
      }
      if (unitarity_defect(bundle.matrix) > unitarity_tol) {
        throw validation_error("circuit: bundle block is not unitary");
      }
      for (int r = 0; r < b; ++r) {
        const int mode = bundle.modes[static_cast<size_t>(r)];
        if (mode < 1 || mode > n_modes) {
          throw validation_error("circuit: bundle mode " + std::to_string(mode) +
                                 " outside [1, " + std::to_string(n_modes) + "]");
        }
        if (covered[static_cast<size_t>(mode - 1)]++) {
          throw validation_error("circuit: mode " + std::to_string(mode) +
                                 " appears in more than one bundle");
        }
      }
      for (int r = 0; r < b; ++r) {
        for (int c = 0; c < b; ++c) {
          const Complex v = bundle.matrix(r, c);
          if (v != Complex(0.0, 0.0)) {
            triplets.emplace_back(bundle.modes[static_cast<size_t>(r)] - 1,
                                  bundle.modes[static_cast<size_t>(c)] - 1, v);
          }
        }
      }
    }
    for (int m = 0; m < n_modes; ++m) {
      if (!covered[static_cast<size_t>(m)]) {
        triplets.emplace_back(m, m, Complex(1.0, 0.0));
      }
    }
  } else {
    const auto& step = std::get<StepLayer>(layer);
    if (static_cast<int>(step.map.size()) != n_modes) {
      throw validation_error("circuit: permutation map has " +
                             std::to_string(step.map.size()) + " entries, expected " +
                             std::to_string(n_modes));
    }
    std::vector<char> hit(static_cast<size_t>(n_modes), 0);
    for (int m = 1; m <= n_modes; ++m) {
      const int image = step.map[static_cast<size_t>(m - 1)];
      if (image < 1 || image > n_modes || hit[static_cast<size_t>(image - 1)]++) {
        throw validation_error("circuit: map is not a permutation of [1, " +
                               std::to_string(n_modes) + "]");
      }
      triplets.emplace_back(image - 1, m - 1, Complex(1.0, 0.0));
    }
  }
  SparseMatrixXcd m(n_modes, n_modes);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

}  // namespace detail

/**
 * Map a walk onto optics: one coin layer applying each A^(x) inside the
 * bundle of d modes belonging to position x (identity on the bundle's
 * unphysical coin slots), then one permutation layer swapping (x, c) to
 * (c, x) in flat-mode numbering. The composed transfer matrix equals
 * build_unitary(g, coins).
 */
inline OpticalCircuit to_circuit(const Graph& g, const CoinAssignment& coins) {
  const int n = g.n_vertices();
  if (coins.n_vertices() != n) {
    throw validation_error("coin assignment covers " + std::to_string(coins.n_vertices()) +
                           " vertices but the graph has " + std::to_string(n));
  }
  if (!g.symmetric_adjacency()) {
    throw validation_error(
        "to_circuit: the step permutation (x,c) <-> (c,x) requires every edge to be "
        "bidirectional; this graph has one-way edges");
  }
  OpticalCircuit circuit;
  circuit.n_modes = n * n;
  CoinLayer coin_layer;
  coin_layer.bundles.reserve(static_cast<size_t>(n));
  for (Vertex x = 1; x <= n; ++x) {
    CoinBundle bundle;
    bundle.modes.resize(static_cast<size_t>(n));
    for (int c = 1; c <= n; ++c) bundle.modes[static_cast<size_t>(c - 1)] = flat_index(x, c, n);
    bundle.matrix = Eigen::MatrixXcd::Zero(n, n);
    const auto& in = g.in_coins(x);
    const auto& out = g.neighborhood(x);
    const CoinMatrix& a = coins.coin(x);
    // slot c feeds slots n_x with the coin row of c; unphysical slots pass through
    for (Vertex c = 1; c <= n; ++c) {
      if (is_physical(g, x, c)) {
        const auto it = std::lower_bound(in.begin(), in.end(), c);
        const int ci = static_cast<int>(it - in.begin());
        for (int ji = 0; ji < static_cast<int>(out.size()); ++ji) {
          bundle.matrix(out[static_cast<size_t>(ji)] - 1, c - 1) = a(ci, ji);
        }
      } else {
        bundle.matrix(c - 1, c - 1) = Complex(1.0, 0.0);
      }
    }
    coin_layer.bundles.push_back(std::move(bundle));
  }
  circuit.layers.emplace_back(std::move(coin_layer));
  StepLayer step;
  step.map.resize(static_cast<size_t>(circuit.n_modes));
  for (Vertex x = 1; x <= n; ++x) {
    for (Vertex c = 1; c <= n; ++c) {
      step.map[static_cast<size_t>(flat_index(x, c, n) - 1)] = flat_index(c, x, n);
    }
  }
  circuit.layers.emplace_back(std::move(step));
  return circuit;
}

/// Ordered product of the layer matrices. The mode count must be a perfect
/// square so the result lives on a (position, coin) basis.
inline GlobalUnitary circuit_unitary(const OpticalCircuit& c) {
  if (c.n_modes < 1) throw validation_error("circuit: needs at least one mode");
  const int n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(c.n_modes))));
  if (n * n != c.n_modes) {
    throw validation_error("circuit: mode count " + std::to_string(c.n_modes) +
                           " is not a perfect square");
  }
  SparseMatrixXcd u(c.n_modes, c.n_modes);
  u.setIdentity();
  for (const auto& layer : c.layers) {
    u = detail::layer_matrix(layer, c.n_modes) * u;
  }
  return GlobalUnitary(std::move(u), n);
}

namespace detail {

inline nlohmann::ordered_json complex_matrix_json(const Eigen::MatrixXcd& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (long r = 0; r < m.rows(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (long c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Eigen::MatrixXcd complex_matrix_from_json(const nlohmann::json& j,
                                                 const std::string& field) {
  if (!j.is_array() || j.empty()) {
    throw validation_error(field + ": expected a non-empty array of matrix rows");
  }
  const long rows = static_cast<long>(j.size());
  const long cols = static_cast<long>(j.at(0).size());
  Eigen::MatrixXcd m(rows, cols);
  for (long r = 0; r < rows; ++r) {
    const auto& row = j.at(static_cast<size_t>(r));
    if (!row.is_array() || static_cast<long>(row.size()) != cols) {
      throw validation_error(field + ": ragged matrix rows");
    }
    for (long c = 0; c < cols; ++c) {
      const auto& entry = row.at(static_cast<size_t>(c));
      if (!entry.is_array() || entry.size() != 2) {
        throw validation_error(field + ": matrix entries must be [re, im] pairs");
      }
      m(r, c) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return m;
}

}  // namespace detail

/// Circuit as a JSON document with deterministic field order. Doubles use
/// the shortest exact representation, so import reproduces bit-identical
/// matrices.
inline std::string export_circuit(const OpticalCircuit& c) {
  nlohmann::ordered_json doc;
  doc["n_modes"] = c.n_modes;
  doc["layers"] = nlohmann::ordered_json::array();
  for (const auto& layer : c.layers) {
    nlohmann::ordered_json jl;
    if (const auto* coin = std::get_if<CoinLayer>(&layer)) {
      jl["type"] = "coin";
      jl["bundles"] = nlohmann::ordered_json::array();
      for (const auto& bundle : coin->bundles) {
        nlohmann::ordered_json jb;
        jb["modes"] = bundle.modes;
        jb["matrix"] = detail::complex_matrix_json(bundle.matrix);
        jl["bundles"].push_back(std::move(jb));
      }
    } else {
      jl["type"] = "permutation";
      jl["map"] = std::get<StepLayer>(layer).map;
    }
    doc["layers"].push_back(std::move(jl));
  }
  return doc.dump(2);
}

inline OpticalCircuit import_circuit(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw validation_error(std::string("circuit: invalid JSON: ") + e.what());
  }
  OpticalCircuit c;
  try {
    c.n_modes = doc.at("n_modes").get<int>();
    for (const auto& jl : doc.at("layers")) {
      const std::string type = jl.at("type").get<std::string>();
      if (type == "coin") {
        CoinLayer layer;
        for (const auto& jb : jl.at("bundles")) {
          CoinBundle bundle;
          bundle.modes = jb.at("modes").get<std::vector<int>>();
          bundle.matrix = detail::complex_matrix_from_json(jb.at("matrix"), "circuit matrix");
          layer.bundles.push_back(std::move(bundle));
        }
        c.layers.emplace_back(std::move(layer));
      } else if (type == "permutation") {
        c.layers.emplace_back(StepLayer{jl.at("map").get<std::vector<int>>()});
      } else {
        throw validation_error("circuit: unknown layer type '" + type + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("circuit: malformed document: ") + e.what());
  }
  // validates bundles and permutations
  for (const auto& layer : c.layers) detail::layer_matrix(layer, c.n_modes);
  return c;
}

}  // namespace qwalk
