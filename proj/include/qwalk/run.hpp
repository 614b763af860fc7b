#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/io.hpp"
#include "qwalk/multiwalker.hpp"
#include "qwalk/optical.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/version.hpp"

namespace qwalk {

enum class InitialCoin { left, symmetric, value };

/// One experiment description; shared schema between config files and the
/// manifests written next to every output.
struct RunConfig {
  // graph: exactly one of the two
  std::optional<int> line_size;
  std::optional<std::vector<std::vector<Vertex>>> custom_neighborhoods;

  // coin
  std::string coin_type = "hadamard";  // "hadamard" | "explicit"
  double delta = 0.5;
  std::map<Vertex, Eigen::MatrixXcd> explicit_coins;

  // initial state; absent position means the middle vertex ceil(n/2)
  std::optional<int> initial_position;
  InitialCoin initial_coin = InitialCoin::left;
  int initial_coin_value = 0;

  long steps = 100;
  Metric metric = Metric::shannon;
  std::int64_t q_max = default_q_max;
  double eps = default_eps;
  std::optional<double> delta_a;
  std::optional<double> delta_b;
  std::optional<std::array<int, 2>> two_photon_modes;  // absent -> middle pair
  bool dump_amplitudes = false;
  std::string out_dir = ".";
};

namespace detail {

inline void require_type(const nlohmann::json& j, const char* field, bool ok) {
  if (!ok) throw validation_error(std::string(field) + ": wrong type or value");
}

}  // namespace detail

inline RunConfig config_from_json(const nlohmann::json& doc_in) {
  // a manifest written by this tool can be fed back as a config
  const nlohmann::json& doc =
      (doc_in.is_object() && doc_in.contains("tool") && doc_in.contains("config"))
          ? doc_in.at("config")
          : doc_in;
  if (!doc.is_object()) throw validation_error("config: expected a JSON object");

  static const std::set<std::string> known = {
      "graph", "coin",    "initial", "steps",   "metric",          "q_max", "eps",
      "delta_a", "delta_b", "modes",   "dump_amplitudes", "out"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) {
      throw validation_error("config: unknown field '" + key + "'");
    }
  }

  RunConfig cfg;
  if (doc.contains("graph")) {
    const auto& g = doc.at("graph");
    detail::require_type(g, "graph", g.is_object());
    if (g.contains("line")) {
      detail::require_type(g.at("line"), "graph.line", g.at("line").is_number_integer());
      cfg.line_size = g.at("line").get<int>();
    } else if (g.contains("n_vertices") || g.contains("neighborhoods")) {
      cfg.custom_neighborhoods =
          std::vector<std::vector<Vertex>>();  // validated via graph_from_json
      Graph parsed = graph_from_json(g);
      std::vector<std::vector<Vertex>> nbr;
      for (Vertex x = 1; x <= parsed.n_vertices(); ++x) nbr.push_back(parsed.neighborhood(x));
      cfg.custom_neighborhoods = std::move(nbr);
    } else {
      throw validation_error("graph: set either graph.line or graph.n_vertices/neighborhoods");
    }
  }
  if (doc.contains("coin")) {
    const auto& c = doc.at("coin");
    detail::require_type(c, "coin", c.is_object());
    const std::string type = c.value("type", "hadamard");
    if (type == "hadamard") {
      cfg.coin_type = "hadamard";
      if (c.contains("delta")) {
        detail::require_type(c.at("delta"), "coin.delta", c.at("delta").is_number());
        cfg.delta = c.at("delta").get<double>();
      }
    } else if (type == "explicit") {
      cfg.coin_type = "explicit";
      if (!c.contains("matrices") || !c.at("matrices").is_object()) {
        throw validation_error("coin.matrices: explicit coins need a vertex -> matrix map");
      }
      for (const auto& [key, value] : c.at("matrices").items()) {
        int vertex = 0;
        try {
          vertex = std::stoi(key);
        } catch (...) {
          throw validation_error("coin.matrices: key '" + key + "' is not a vertex index");
        }
        cfg.explicit_coins[vertex] =
            detail::complex_matrix_from_json(value, "coin.matrices." + key);
      }
    } else {
      throw validation_error("coin.type: expected 'hadamard' or 'explicit', got '" + type + "'");
    }
  }
  if (doc.contains("initial")) {
    const auto& init = doc.at("initial");
    detail::require_type(init, "initial", init.is_object());
    if (init.contains("position")) {
      const auto& p = init.at("position");
      if (p.is_string() && p.get<std::string>() == "middle") {
        cfg.initial_position.reset();
      } else if (p.is_number_integer()) {
        cfg.initial_position = p.get<int>();
      } else {
        throw validation_error("initial.position: expected an integer or \"middle\"");
      }
    }
    if (init.contains("coin")) {
      const auto& c = init.at("coin");
      if (c.is_number_integer()) {
        cfg.initial_coin = InitialCoin::value;
        cfg.initial_coin_value = c.get<int>();
      } else if (c.is_string() && c.get<std::string>() == "left") {
        cfg.initial_coin = InitialCoin::left;
      } else if (c.is_string() && c.get<std::string>() == "symmetric") {
        cfg.initial_coin = InitialCoin::symmetric;
      } else {
        throw validation_error("initial.coin: expected an integer, \"left\" or \"symmetric\"");
      }
    }
  }
  if (doc.contains("steps")) {
    detail::require_type(doc.at("steps"), "steps",
                         doc.at("steps").is_number_integer() && doc.at("steps").get<long>() >= 0);
    cfg.steps = doc.at("steps").get<long>();
  }
  if (doc.contains("metric")) {
    const std::string m = doc.at("metric").get<std::string>();
    if (m == "shannon") {
      cfg.metric = Metric::shannon;
    } else if (m == "meyer_wallach") {
      cfg.metric = Metric::meyer_wallach;
    } else {
      throw validation_error("metric: expected 'shannon' or 'meyer_wallach', got '" + m + "'");
    }
  }
  if (doc.contains("q_max")) {
    detail::require_type(doc.at("q_max"), "q_max", doc.at("q_max").is_number_integer());
    cfg.q_max = doc.at("q_max").get<std::int64_t>();
  }
  if (doc.contains("eps")) {
    detail::require_type(doc.at("eps"), "eps", doc.at("eps").is_number());
    cfg.eps = doc.at("eps").get<double>();
  }
  if (doc.contains("delta_a")) cfg.delta_a = doc.at("delta_a").get<double>();
  if (doc.contains("delta_b")) cfg.delta_b = doc.at("delta_b").get<double>();
  if (doc.contains("modes")) {
    const auto& m = doc.at("modes");
    if (m.is_string() && m.get<std::string>() == "middle") {
      cfg.two_photon_modes.reset();
    } else if (m.is_array() && m.size() == 2) {
      cfg.two_photon_modes = std::array<int, 2>{m.at(0).get<int>(), m.at(1).get<int>()};
    } else {
      throw validation_error("modes: expected [i, j] or \"middle\"");
    }
  }
  if (doc.contains("dump_amplitudes")) {
    detail::require_type(doc.at("dump_amplitudes"), "dump_amplitudes",
                         doc.at("dump_amplitudes").is_boolean());
    cfg.dump_amplitudes = doc.at("dump_amplitudes").get<bool>();
  }
  if (doc.contains("out")) {
    detail::require_type(doc.at("out"), "out", doc.at("out").is_string());
    cfg.out_dir = doc.at("out").get<std::string>();
  }
  return cfg;
}

inline json config_to_json(const RunConfig& cfg) {
  json doc;
  if (cfg.line_size) {
    doc["graph"] = {{"line", *cfg.line_size}};
  } else if (cfg.custom_neighborhoods) {
    json g;
    g["n_vertices"] = static_cast<int>(cfg.custom_neighborhoods->size());
    g["neighborhoods"] = *cfg.custom_neighborhoods;
    doc["graph"] = std::move(g);
  }
  if (cfg.coin_type == "hadamard") {
    doc["coin"] = {{"type", "hadamard"}, {"delta", cfg.delta}};
  } else {
    json matrices;
    for (const auto& [vertex, matrix] : cfg.explicit_coins) {
      matrices[std::to_string(vertex)] = detail::complex_matrix_json(matrix);
    }
    doc["coin"] = {{"type", "explicit"}, {"matrices", std::move(matrices)}};
  }
  json init;
  init["position"] = cfg.initial_position ? json(*cfg.initial_position) : json("middle");
  switch (cfg.initial_coin) {
    case InitialCoin::left: init["coin"] = "left"; break;
    case InitialCoin::symmetric: init["coin"] = "symmetric"; break;
    case InitialCoin::value: init["coin"] = cfg.initial_coin_value; break;
  }
  doc["initial"] = std::move(init);
  doc["steps"] = cfg.steps;
  doc["metric"] = metric_name(cfg.metric);
  doc["q_max"] = cfg.q_max;
  doc["eps"] = cfg.eps;
  if (cfg.delta_a) doc["delta_a"] = *cfg.delta_a;
  if (cfg.delta_b) doc["delta_b"] = *cfg.delta_b;
  doc["modes"] = cfg.two_photon_modes
                     ? json({(*cfg.two_photon_modes)[0], (*cfg.two_photon_modes)[1]})
                     : json("middle");
  doc["dump_amplitudes"] = cfg.dump_amplitudes;
  doc["out"] = cfg.out_dir;
  return doc;
}

inline Graph resolve_graph(const RunConfig& cfg) {
  if (cfg.line_size && cfg.custom_neighborhoods) {
    throw validation_error("graph: give either a line size or custom neighborhoods, not both");
  }
  if (cfg.line_size) return make_line(*cfg.line_size);
  if (cfg.custom_neighborhoods) return make_custom(*cfg.custom_neighborhoods);
  throw validation_error("graph: missing (set graph.line or graph.n_vertices/neighborhoods)");
}

inline CoinAssignment resolve_coins(const RunConfig& cfg, const Graph& g,
                                    std::optional<double> delta_override = {}) {
  if (cfg.coin_type == "hadamard") {
    return assign_uniform(g, hadamard_biased(delta_override.value_or(cfg.delta)));
  }
  return assign_per_vertex(g, cfg.explicit_coins);
}

struct ResolvedInitial {
  WalkerState state;
  int position = 0;
  json coin_desc;  // integer coin value or "symmetric"
};

inline ResolvedInitial resolve_initial(const RunConfig& cfg, const Graph& g) {
  const int n = g.n_vertices();
  const int x = cfg.initial_position.value_or((n + 1) / 2);
  g.check_vertex(x);
  switch (cfg.initial_coin) {
    case InitialCoin::symmetric:
      return ResolvedInitial{symmetric_state(g, x), x, json("symmetric")};
    case InitialCoin::value:
      return ResolvedInitial{localized_state(g, x, cfg.initial_coin_value), x,
                             json(cfg.initial_coin_value)};
    case InitialCoin::left:
    default: {
      const int c = (x == 1) ? 1 : x - 1;
      return ResolvedInitial{localized_state(g, x, c), x, json(c)};
    }
  }
}

/// Both photons at the middle vertex, one in each of its two in-coin slots,
/// unless explicit flat modes were configured.
inline std::array<int, 2> resolve_two_photon_modes(const RunConfig& cfg, const Graph& g) {
  const int n = g.n_vertices();
  const int n_modes = n * n;
  if (cfg.two_photon_modes) {
    for (int mode : *cfg.two_photon_modes) {
      if (mode < 1 || mode > n_modes) {
        throw validation_error("modes: " + std::to_string(mode) + " outside [1, " +
                               std::to_string(n_modes) + "]");
      }
    }
    return *cfg.two_photon_modes;
  }
  const int x = (n + 1) / 2;
  const auto& in = g.in_coins(x);
  if (in.size() != 2) {
    throw validation_error("modes: middle vertex " + std::to_string(x) + " has " +
                           std::to_string(in.size()) +
                           " coin slots; give explicit modes [i, j]");
  }
  return {flat_index(x, in[0], n), flat_index(x, in[1], n)};
}

namespace detail {

inline std::filesystem::path prepare_out_dir(const RunConfig& cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw io_error("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
  }
  return dir;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open '" + path.string() + "' for writing");
  return os;
}

inline void close_output(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw io_error("write to '" + path.string() + "' failed");
}

inline void write_manifest(const std::filesystem::path& dir, const std::string& experiment,
                           const RunConfig& cfg, const json& results) {
  json doc;
  doc["tool"] = "qwalk";
  doc["version"] = version;
  doc["experiment"] = experiment;
  doc["config"] = config_to_json(cfg);
  doc["results"] = results;
  const auto path = dir / "manifest.json";
  auto os = open_output(path);
  os << doc.dump(2) << '\n';
  close_output(os, path);
}

}  // namespace detail

/// Entanglement series + position heatmap for one walk. Writes series.csv,
/// heatmap.csv, optionally amplitudes.csv, and manifest.json.
inline void cmd_simulate(const RunConfig& cfg) {
  const Graph g = resolve_graph(cfg);
  const CoinAssignment coins = resolve_coins(cfg, g);
  const GlobalUnitary u = build_unitary(g, coins);
  ResolvedInitial init = resolve_initial(cfg, g);

  const auto dir = detail::prepare_out_dir(cfg);
  auto series_os = detail::open_output(dir / "series.csv");
  auto heatmap_os = detail::open_output(dir / "heatmap.csv");
  std::optional<std::ofstream> amp_os;
  if (cfg.dump_amplitudes) amp_os = detail::open_output(dir / "amplitudes.csv");

  const double e_max = metric_max_reference(cfg.metric, u.dim());
  series_csv_header(series_os);
  heatmap_csv_header(heatmap_os);
  if (amp_os) amplitudes_csv_header(*amp_os);

  WalkerState s = std::move(init.state);
  for (long t = 0; t <= cfg.steps; ++t) {
    series_csv_row(series_os, t, metric_value(cfg.metric, s), e_max);
    heatmap_csv_rows(heatmap_os, t, position_marginal(s));
    if (amp_os) amplitudes_csv_rows(*amp_os, t, s);
    if (t < cfg.steps) s = step(u, s);
  }
  detail::close_output(series_os, dir / "series.csv");
  detail::close_output(heatmap_os, dir / "heatmap.csv");
  if (amp_os) detail::close_output(*amp_os, dir / "amplitudes.csv");

  json results;
  results["e_max"] = e_max;
  if (cfg.metric == Metric::shannon) {
    // ceiling over the physically reachable basis states only
    results["e_max_physical_subspace"] = std::log2(static_cast<double>(g.physical_pair_count()));
  }
  results["initial"] = {{"position", init.position}, {"coin", init.coin_desc}};
  detail::write_manifest(dir, "simulate", cfg, results);
}

/// Eigenvalue spectrum, rationality classification and predicted periods.
/// Writes eigenvalues.csv, spectrum.json and manifest.json.
inline void cmd_spectrum(const RunConfig& cfg) {
  const Graph g = resolve_graph(cfg);
  const CoinAssignment coins = resolve_coins(cfg, g);
  const GlobalUnitary u = build_unitary(g, coins);
  SpectrumAnalysis spectrum = eigen_spectrum(u);
  classify(spectrum, cfg.q_max, cfg.eps);

  const auto dir = detail::prepare_out_dir(cfg);
  auto eig_os = detail::open_output(dir / "eigenvalues.csv");
  eigenvalues_csv(eig_os, spectrum);
  detail::close_output(eig_os, dir / "eigenvalues.csv");

  const json spectrum_doc = spectrum_to_json(spectrum);
  auto json_os = detail::open_output(dir / "spectrum.json");
  json_os << spectrum_doc.dump(2) << '\n';
  detail::close_output(json_os, dir / "spectrum.json");

  json results;
  results["classification"] = spectrum_doc.at("classification");
  results["predicted_period"] = spectrum_doc.at("predicted_period");
  results["period_up_to_phase"] = spectrum_doc.at("period_up_to_phase");
  detail::write_manifest(dir, "spectrum", cfg, results);
}

/// Two runs differing only in coin bias, from the same initial state.
/// Writes sensitivity.csv (t, E_a, E_b, dE) and manifest.json.
inline void cmd_sensitivity(const RunConfig& cfg) {
  if (!cfg.delta_a || !cfg.delta_b) {
    throw validation_error("sensitivity: both delta_a and delta_b are required");
  }
  if (cfg.coin_type != "hadamard") {
    throw validation_error("sensitivity: only hadamard coins support a bias sweep");
  }
  const Graph g = resolve_graph(cfg);
  const GlobalUnitary ua = build_unitary(g, resolve_coins(cfg, g, cfg.delta_a));
  const GlobalUnitary ub = build_unitary(g, resolve_coins(cfg, g, cfg.delta_b));
  ResolvedInitial init = resolve_initial(cfg, g);

  const auto dir = detail::prepare_out_dir(cfg);
  auto os = detail::open_output(dir / "sensitivity.csv");
  sensitivity_csv_header(os);
  WalkerState sa = init.state;
  WalkerState sb = std::move(init.state);
  double max_divergence = 0.0;
  long t_max_divergence = 0;
  for (long t = 0; t <= cfg.steps; ++t) {
    const double ea = metric_value(cfg.metric, sa);
    const double eb = metric_value(cfg.metric, sb);
    if (std::abs(ea - eb) > max_divergence) {
      max_divergence = std::abs(ea - eb);
      t_max_divergence = t;
    }
    sensitivity_csv_row(os, t, ea, eb);
    if (t < cfg.steps) {
      sa = step(ua, sa);
      sb = step(ub, sb);
    }
  }
  detail::close_output(os, dir / "sensitivity.csv");

  json results;
  results["max_divergence"] = max_divergence;
  results["t_max_divergence"] = t_max_divergence;
  results["initial"] = {{"position", init.position}, {"coin", init.coin_desc}};
  detail::write_manifest(dir, "sensitivity", cfg, results);
}

/// Meyer-Wallach dynamics of one walker and of a two-photon input on the
/// same walk. Writes two_walker.csv (t, E_one, E_two) and manifest.json.
inline void cmd_two_walker(const RunConfig& cfg) {
  const Graph g = resolve_graph(cfg);
  const CoinAssignment coins = resolve_coins(cfg, g);
  const GlobalUnitary u = build_unitary(g, coins);
  ResolvedInitial init = resolve_initial(cfg, g);
  const auto modes = resolve_two_photon_modes(cfg, g);
  const Eigen::MatrixXcd u_dense = u.dense();

  const auto dir = detail::prepare_out_dir(cfg);
  auto os = detail::open_output(dir / "two_walker.csv");
  pair_series_csv_header(os);
  WalkerState one = std::move(init.state);
  TwoWalkerState two = two_photon_input(u.dim(), modes[0], modes[1]);
  for (long t = 0; t <= cfg.steps; ++t) {
    pair_series_csv_row(os, t, meyer_wallach_single(one), meyer_wallach_two(two));
    if (t < cfg.steps) {
      one = step(u, one);
      two = evolve_two(u_dense, two);
    }
  }
  detail::close_output(os, dir / "two_walker.csv");

  json results;
  results["modes"] = {modes[0], modes[1]};
  results["initial_one_walker"] = {{"position", init.position}, {"coin", init.coin_desc}};
  detail::write_manifest(dir, "two-walker", cfg, results);
}

/// Optical network export with a built-in equivalence check against the walk
/// unitary. Writes circuit.json and manifest.json.
inline void cmd_export_circuit(const RunConfig& cfg) {
  const Graph g = resolve_graph(cfg);
  const CoinAssignment coins = resolve_coins(cfg, g);
  const OpticalCircuit circuit = to_circuit(g, coins);
  const GlobalUnitary from_circuit = circuit_unitary(circuit);
  const GlobalUnitary from_walk = build_unitary(g, coins);
  const double deviation = max_abs_diff(from_circuit.matrix(), from_walk.matrix());

  const auto dir = detail::prepare_out_dir(cfg);
  const auto path = dir / "circuit.json";
  auto os = detail::open_output(path);
  os << export_circuit(circuit) << '\n';
  detail::close_output(os, path);

  json results;
  results["n_modes"] = circuit.n_modes;
  results["max_deviation_from_walk_unitary"] = deviation;
  detail::write_manifest(dir, "export-circuit", cfg, results);
}

}  // namespace qwalk
