// qwalk: discrete-time quantum walk experiments on bounded graphs.
//
// Subcommands mirror the experiment runners in qwalk/run.hpp; every run
// writes CSV/JSON outputs plus a manifest.json that can be fed back via
// --config to reproduce the run. Exit codes: 0 success, 2 validation error,
// 3 I/O error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qwalk/qwalk.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<long> steps;
  std::optional<int> size;
  std::optional<double> delta;
  std::optional<std::int64_t> q_max;
  std::optional<double> eps;
  std::optional<std::string> metric;
  std::optional<int> position;
  std::optional<std::string> coin;
  std::optional<double> delta_a;
  std::optional<double> delta_b;
  std::vector<int> modes;
  bool dump_amplitudes = false;
};

void add_common_options(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file (or a manifest.json)");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--steps", f.steps, "number of time steps")->check(CLI::NonNegativeNumber);
  cmd->add_option("--size", f.size, "line graph size |G|");
  cmd->add_option("--delta", f.delta, "Hadamard coin bias in [0, 1]");
  cmd->add_option("--qmax", f.q_max, "largest denominator tried when rationalizing eigenphases");
  cmd->add_option("--eps", f.eps, "tolerance for eigenphase rationalization");
  cmd->add_option("--metric", f.metric, "entanglement metric: shannon | meyer_wallach");
  cmd->add_option("--position", f.position, "initial position (default: middle vertex)");
  cmd->add_option("--coin", f.coin, "initial coin: an integer, 'left' or 'symmetric'");
}

qwalk::RunConfig build_config(const Flags& f) {
  qwalk::RunConfig cfg;
  if (!f.config_path.empty()) {
    std::ifstream is(f.config_path);
    if (!is) throw qwalk::io_error("cannot read config file '" + f.config_path + "'");
    std::stringstream buffer;
    buffer << is.rdbuf();
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
      throw qwalk::validation_error(std::string("config: invalid JSON: ") + e.what());
    }
    cfg = qwalk::config_from_json(doc);
  }
  if (f.size) {
    cfg.line_size = *f.size;
    cfg.custom_neighborhoods.reset();
  }
  if (f.delta) {
    cfg.coin_type = "hadamard";
    cfg.delta = *f.delta;
  }
  if (f.steps) cfg.steps = *f.steps;
  if (f.q_max) cfg.q_max = *f.q_max;
  if (f.eps) cfg.eps = *f.eps;
  if (f.out) cfg.out_dir = *f.out;
  if (f.metric) {
    if (*f.metric == "shannon") {
      cfg.metric = qwalk::Metric::shannon;
    } else if (*f.metric == "meyer_wallach") {
      cfg.metric = qwalk::Metric::meyer_wallach;
    } else {
      throw qwalk::validation_error("metric: expected 'shannon' or 'meyer_wallach', got '" +
                                    *f.metric + "'");
    }
  }
  if (f.position) cfg.initial_position = *f.position;
  if (f.coin) {
    if (*f.coin == "left") {
      cfg.initial_coin = qwalk::InitialCoin::left;
    } else if (*f.coin == "symmetric") {
      cfg.initial_coin = qwalk::InitialCoin::symmetric;
    } else {
      try {
        cfg.initial_coin_value = std::stoi(*f.coin);
        cfg.initial_coin = qwalk::InitialCoin::value;
      } catch (...) {
        throw qwalk::validation_error("coin: expected an integer, 'left' or 'symmetric', got '" +
                                      *f.coin + "'");
      }
    }
  }
  if (f.delta_a) cfg.delta_a = *f.delta_a;
  if (f.delta_b) cfg.delta_b = *f.delta_b;
  if (!f.modes.empty()) {
    if (f.modes.size() != 2) {
      throw qwalk::validation_error("modes: expected exactly two flat mode indices");
    }
    cfg.two_photon_modes = std::array<int, 2>{f.modes[0], f.modes[1]};
  }
  if (f.dump_amplitudes) cfg.dump_amplitudes = true;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete-time quantum walk simulator"};
  app.set_version_flag("--version", qwalk::version);
  app.require_subcommand(1);

  Flags f;
  auto* simulate = app.add_subcommand(
      "simulate", "entanglement series and position heatmap of a single walk");
  add_common_options(simulate, f);
  simulate->add_flag("--dump-amplitudes", f.dump_amplitudes,
                     "also write the full per-step amplitude table");

  auto* spectrum = app.add_subcommand(
      "spectrum", "eigenvalue spectrum, periodicity classification and predicted periods");
  add_common_options(spectrum, f);

  auto* sensitivity = app.add_subcommand(
      "sensitivity", "compare entanglement series for two coin biases");
  add_common_options(sensitivity, f);
  sensitivity->add_option("--delta-a", f.delta_a, "first coin bias");
  sensitivity->add_option("--delta-b", f.delta_b, "second coin bias");

  auto* two_walker = app.add_subcommand(
      "two-walker", "Meyer-Wallach dynamics of one walker vs a two-photon input");
  add_common_options(two_walker, f);
  two_walker->add_option("--modes", f.modes,
                         "two flat input modes for the photon pair (default: middle vertex)")
      ->expected(2);

  auto* export_circuit = app.add_subcommand(
      "export-circuit", "emit the walk as a linear-optical layer network");
  add_common_options(export_circuit, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const qwalk::RunConfig cfg = build_config(f);
    if (simulate->parsed()) {
      qwalk::cmd_simulate(cfg);
    } else if (spectrum->parsed()) {
      qwalk::cmd_spectrum(cfg);
    } else if (sensitivity->parsed()) {
      qwalk::cmd_sensitivity(cfg);
    } else if (two_walker->parsed()) {
      qwalk::cmd_two_walker(cfg);
    } else if (export_circuit->parsed()) {
      qwalk::cmd_export_circuit(cfg);
    }
  } catch (const qwalk::io_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 3;
  } catch (const qwalk::analysis_error& e) {
    std::cerr << "analysis failure: " << e.what() << '\n';
    return 2;
  } catch (const qwalk::validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
