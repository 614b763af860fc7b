#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qwalk/evolution.hpp"

namespace qwalk {

enum class Metric { shannon, meyer_wallach };

inline const char* metric_name(Metric m) {
  return m == Metric::shannon ? "shannon" : "meyer_wallach";
}

struct EntanglementSeries {
  Metric metric;
  std::vector<double> values;   // one entry per time step, starting at t = 0
  double max_reference;         // balanced W-state ceiling for the metric
};

namespace detail {
inline void check_normalized(const Eigen::VectorXcd& amplitudes, const char* op) {
  const double dev = std::abs(amplitudes.norm() - 1.0);
  if (dev > state_norm_check_tol) {
    throw validation_error(std::string(op) + ": state is not normalized (|norm - 1| = " +
                           std::to_string(dev) + ")");
  }
}
}  // namespace detail

/// Shannon entropy (bits) of the basis probability distribution, with the
/// 0 log 0 := 0 convention. 0 for a localized state, log2(N) for a balanced
/// W-state over all N basis states.
inline double shannon_entropy(const WalkerState& s) {
  detail::check_normalized(s.amplitudes, "shannon_entropy");
  double e = 0.0;
  for (long i = 0; i < s.amplitudes.size(); ++i) {
    const double p = std::norm(s.amplitudes[i]);
    if (p > 0.0) e -= p * std::log2(p);
  }
  return e;
}

/// Meyer-Wallach measure of a single excitation spread over N modes. Each
/// mode's reduced state is diagonal with occupation probability |a_i|^2, so
/// 1 - (1/N) sum tr(rho_i^2) collapses to (2/N) sum p_i (1 - p_i).
inline double meyer_wallach_single(const Eigen::VectorXcd& amplitudes) {
  detail::check_normalized(amplitudes, "meyer_wallach_single");
  const double n_modes = static_cast<double>(amplitudes.size());
  double acc = 0.0;
  for (long i = 0; i < amplitudes.size(); ++i) {
    const double p = std::norm(amplitudes[i]);
    acc += p * (1.0 - p);
  }
  return 2.0 / n_modes * acc;
}

inline double meyer_wallach_single(const WalkerState& s) {
  return meyer_wallach_single(s.amplitudes);
}

inline double metric_value(Metric m, const WalkerState& s) {
  return m == Metric::shannon ? shannon_entropy(s) : meyer_wallach_single(s);
}

/// Ceiling reached by the balanced W-state over N basis modes.
inline double metric_max_reference(Metric m, int n_modes) {
  if (m == Metric::shannon) return std::log2(static_cast<double>(n_modes));
  const double n = static_cast<double>(n_modes);
  return 2.0 * (n - 1.0) / (n * n);
}

inline EntanglementSeries series(Metric metric, const std::vector<WalkerState>& states) {
  if (states.empty()) {
    throw validation_error("series: needs at least one state");
  }
  EntanglementSeries out{metric, {}, metric_max_reference(metric, states.front().dim())};
  out.values.reserve(states.size());
  for (const auto& s : states) out.values.push_back(metric_value(metric, s));
  return out;
}

/// Per-position probability sum_c |a_{xc}|^2.
inline Eigen::VectorXd position_marginal(const WalkerState& s) {
  detail::check_normalized(s.amplitudes, "position_marginal");
  const int n = s.n_vertices;
  Eigen::VectorXd marginal = Eigen::VectorXd::Zero(n);
  for (long i = 0; i < s.amplitudes.size(); ++i) {
    marginal[(i / n)] += std::norm(s.amplitudes[i]);
  }
  return marginal;
}

}  // namespace qwalk
