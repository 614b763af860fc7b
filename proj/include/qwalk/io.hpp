#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwalk/entanglement.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

using json = nlohmann::ordered_json;

/// 17 significant digits: enough to round-trip any double, and fixed so that
/// identical runs produce byte-identical files.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline json graph_to_json(const Graph& g) {
  json doc;
  doc["n_vertices"] = g.n_vertices();
  json nbr = json::array();
  for (Vertex x = 1; x <= g.n_vertices(); ++x) nbr.push_back(g.neighborhood(x));
  doc["neighborhoods"] = std::move(nbr);
  return doc;
}

inline Graph graph_from_json(const nlohmann::json& doc) {
  if (!doc.contains("n_vertices") || !doc.contains("neighborhoods")) {
    throw validation_error("graph: expected fields n_vertices and neighborhoods");
  }
  const int n = doc.at("n_vertices").get<int>();
  auto nbr = doc.at("neighborhoods").get<std::vector<std::vector<Vertex>>>();
  if (static_cast<int>(nbr.size()) != n) {
    throw validation_error("graph.neighborhoods: got " + std::to_string(nbr.size()) +
                           " lists for n_vertices = " + std::to_string(n));
  }
  return make_custom(std::move(nbr));
}

inline json spectrum_to_json(const SpectrumAnalysis& s) {
  json doc;
  doc["q_max"] = s.q_max;
  doc["eps"] = s.eps;
  if (s.classification) {
    doc["classification"] = classification_name(*s.classification);
  } else {
    doc["classification"] = nullptr;
  }
  if (s.predicted_period) {
    doc["predicted_period"] = *s.predicted_period;
  } else {
    doc["predicted_period"] = nullptr;
  }
  if (s.period_up_to_phase) {
    doc["period_up_to_phase"] = *s.period_up_to_phase;
  } else {
    doc["period_up_to_phase"] = nullptr;
  }
  json eigs = json::array();
  for (long i = 0; i < s.eigenvalues.size(); ++i) {
    json e;
    e["re"] = s.eigenvalues[i].real();
    e["im"] = s.eigenvalues[i].imag();
    e["arg_over_2pi"] = s.args_over_2pi[static_cast<size_t>(i)];
    const auto& r = i < static_cast<long>(s.rational_approx.size())
                        ? s.rational_approx[static_cast<size_t>(i)]
                        : std::optional<Rational>{};
    e["p"] = r ? json(r->p) : json(nullptr);
    e["q"] = r ? json(r->q) : json(nullptr);
    eigs.push_back(std::move(e));
  }
  doc["eigenvalues"] = std::move(eigs);
  return doc;
}

// CSV row helpers; every writer uses format_double for determinism.

inline void series_csv_header(std::ostream& os) { os << "t,E,E_max\n"; }

inline void series_csv_row(std::ostream& os, long t, double e, double e_max) {
  os << t << ',' << format_double(e) << ',' << format_double(e_max) << '\n';
}

inline void heatmap_csv_header(std::ostream& os) { os << "t,position,probability\n"; }

inline void heatmap_csv_rows(std::ostream& os, long t, const Eigen::VectorXd& marginal) {
  for (long x = 0; x < marginal.size(); ++x) {
    os << t << ',' << (x + 1) << ',' << format_double(marginal[x]) << '\n';
  }
}

inline void amplitudes_csv_header(std::ostream& os) { os << "t,x,c,re,im,prob\n"; }

inline void amplitudes_csv_rows(std::ostream& os, long t, const WalkerState& s) {
  const int n = s.n_vertices;
  for (long i = 0; i < s.amplitudes.size(); ++i) {
    const BasisIndex b = basis_from_flat(static_cast<int>(i) + 1, n);
    os << t << ',' << b.position << ',' << b.coin << ','
       << format_double(s.amplitudes[i].real()) << ','
       << format_double(s.amplitudes[i].imag()) << ','
       << format_double(std::norm(s.amplitudes[i])) << '\n';
  }
}

inline void sensitivity_csv_header(std::ostream& os) { os << "t,E_a,E_b,dE\n"; }

inline void sensitivity_csv_row(std::ostream& os, long t, double ea, double eb) {
  os << t << ',' << format_double(ea) << ',' << format_double(eb) << ','
     << format_double(std::abs(ea - eb)) << '\n';
}

inline void pair_series_csv_header(std::ostream& os) { os << "t,E_one,E_two\n"; }

inline void pair_series_csv_row(std::ostream& os, long t, double e1, double e2) {
  os << t << ',' << format_double(e1) << ',' << format_double(e2) << '\n';
}

inline void eigenvalues_csv(std::ostream& os, const SpectrumAnalysis& s) {
  os << "re,im\n";
  for (long i = 0; i < s.eigenvalues.size(); ++i) {
    os << format_double(s.eigenvalues[i].real()) << ','
       << format_double(s.eigenvalues[i].imag()) << '\n';
  }
}

}  // namespace qwalk
