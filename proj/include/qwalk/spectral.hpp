#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/evolution.hpp"

namespace qwalk {

/// Eigenphase as a fraction of a full turn, in lowest terms: arg/2pi = p/q.
struct Rational {
  std::int64_t p = 0;
  std::int64_t q = 1;
  bool operator==(const Rational&) const = default;
};

enum class Classification { periodic, quasi_periodic };

inline const char* classification_name(Classification c) {
  return c == Classification::periodic ? "periodic" : "quasi_periodic";
}

inline constexpr std::int64_t default_q_max = 10000;
inline constexpr double default_eps = 1e-9;

/**
 * Eigenvalue spectrum of the one-step evolution plus its rationality
 * analysis. Rationality is tolerance-relative: an eigenphase counts as
 * rational when some p/q with q <= q_max lies within eps of it, so the
 * classification always reports the (q_max, eps) it was computed with.
 */
struct SpectrumAnalysis {
  Eigen::VectorXcd eigenvalues;               // sorted by argument
  std::vector<double> args_over_2pi;          // in [0, 1)
  std::vector<std::optional<Rational>> rational_approx;
  std::optional<Classification> classification;
  std::optional<std::uint64_t> predicted_period;
  std::optional<std::uint64_t> period_up_to_phase;
  std::int64_t q_max = default_q_max;
  double eps = default_eps;
};

/// Eigenvalues of the step matrix, sorted by argument. The spectrum of a
/// unitary lies on the unit circle; inputs violating that are rejected.
inline SpectrumAnalysis eigen_spectrum(const GlobalUnitary& u) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(u.dense(), false);
  if (solver.info() != Eigen::Success) {
    throw analysis_error("eigen_spectrum: eigendecomposition failed");
  }
  Eigen::VectorXcd eig = solver.eigenvalues();
  SpectrumAnalysis out;
  out.args_over_2pi.reserve(static_cast<size_t>(eig.size()));
  std::vector<std::pair<double, Complex>> by_arg;
  by_arg.reserve(static_cast<size_t>(eig.size()));
  for (long i = 0; i < eig.size(); ++i) {
    if (std::abs(std::abs(eig[i]) - 1.0) > norm_tol) {
      throw validation_error("eigen_spectrum: eigenvalue modulus " +
                             std::to_string(std::abs(eig[i])) +
                             " off the unit circle; input is not unitary");
    }
    double a = std::arg(eig[i]) / (2.0 * std::numbers::pi);
    if (a < 0.0) a += 1.0;
    if (a >= 1.0) a = 0.0;
    by_arg.emplace_back(a, eig[i]);
  }
  std::sort(by_arg.begin(), by_arg.end(),
            [](const auto& lhs, const auto& rhs) { return lhs.first < rhs.first; });
  out.eigenvalues.resize(eig.size());
  for (long i = 0; i < eig.size(); ++i) {
    out.args_over_2pi.push_back(by_arg[static_cast<size_t>(i)].first);
    out.eigenvalues[i] = by_arg[static_cast<size_t>(i)].second;
  }
  return out;
}

namespace detail {

// Smallest-denominator fraction inside [lo, hi], by walking the continued
// fraction of the interval. Returns nullopt on (pathological) depth/overflow.
inline std::optional<Rational> simplest_in_interval(double lo, double hi, int depth = 0) {
  if (depth > 64 || !(lo <= hi)) return std::nullopt;
  const double ilo = std::ceil(lo);
  if (ilo <= hi) {
    if (std::abs(ilo) > 4.0e18) return std::nullopt;
    return Rational{static_cast<std::int64_t>(ilo), 1};
  }
  const double fl = std::floor(lo);
  const auto inner = simplest_in_interval(1.0 / (hi - fl), 1.0 / (lo - fl), depth + 1);
  if (!inner) return std::nullopt;
  const double p = fl * static_cast<double>(inner->p) + static_cast<double>(inner->q);
  if (std::abs(p) > 4.0e18) return std::nullopt;
  return Rational{static_cast<std::int64_t>(fl) * inner->p + inner->q, inner->p};
}

inline std::optional<std::uint64_t> checked_lcm(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return std::nullopt;
  const std::uint64_t g = std::gcd(a, b);
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a / g, b, &out)) return std::nullopt;
  return out;
}

}  // namespace detail

/// Smallest-denominator p/q with |arg - p/q| <= eps and q <= q_max, or
/// nullopt when no such fraction exists. arg is a phase over 2pi in [0, 1);
/// values within eps of 1 rationalize to 1/1 (a full turn).
inline std::optional<Rational> rationalize(double arg_over_2pi, std::int64_t q_max,
                                           double eps) {
  if (!(arg_over_2pi >= 0.0 && arg_over_2pi < 1.0)) {
    throw validation_error("rationalize: argument must lie in [0, 1), got " +
                           std::to_string(arg_over_2pi));
  }
  if (q_max < 1 || q_max > 1000000000) {
    throw validation_error("q_max: must lie in [1, 1e9]");
  }
  if (!(eps >= 0.0)) {
    throw validation_error("eps: must be non-negative");
  }
  auto r = detail::simplest_in_interval(arg_over_2pi - eps, arg_over_2pi + eps);
  if (!r || r->q > q_max || r->q < 1) return std::nullopt;
  const std::int64_t g = std::gcd(r->p, r->q);
  if (g > 1) {
    r->p /= g;
    r->q /= g;
  }
  if (std::abs(arg_over_2pi - static_cast<double>(r->p) / static_cast<double>(r->q)) > eps) {
    return std::nullopt;
  }
  return r;
}

/// Full-revival period T = lcm of t_j with t_j = q_j / gcd(p_j, q_j).
/// Absent when any eigenphase lacks a rational approximation. Throws
/// analysis_error when the lcm leaves the 64-bit range.
inline std::optional<std::uint64_t> predict_period(const SpectrumAnalysis& analysis) {
  if (analysis.rational_approx.size() != analysis.args_over_2pi.size() ||
      analysis.rational_approx.empty()) {
    return std::nullopt;
  }
  std::uint64_t acc = 1;
  for (const auto& r : analysis.rational_approx) {
    if (!r) return std::nullopt;
    const auto p = static_cast<std::uint64_t>(r->p);
    const auto q = static_cast<std::uint64_t>(r->q);
    const std::uint64_t tj = q / std::gcd(p, q);
    const auto l = detail::checked_lcm(acc, tj);
    if (!l) {
      throw analysis_error("predict_period: lcm exceeds the 64-bit integer range");
    }
    acc = *l;
  }
  return acc;
}

/// Period after which the state revives up to a global phase: the lcm of the
/// denominators of the eigenphase differences (arg_j - arg_1), reduced
/// exactly. Divides the full period T.
inline std::optional<std::uint64_t> period_up_to_phase(const SpectrumAnalysis& analysis) {
  if (analysis.rational_approx.size() != analysis.args_over_2pi.size() ||
      analysis.rational_approx.empty()) {
    return std::nullopt;
  }
  for (const auto& r : analysis.rational_approx) {
    if (!r) return std::nullopt;
  }
  const Rational first = *analysis.rational_approx.front();
  std::uint64_t acc = 1;
  for (const auto& r : analysis.rational_approx) {
    // exact fraction (p/q - p1/q1) mod 1; q_max <= 1e9 keeps products in range
    const std::int64_t den = r->q * first.q;
    std::int64_t num = (r->p * first.q - first.p * r->q) % den;
    if (num < 0) num += den;
    const std::int64_t g = std::gcd(num, den);
    const auto tj = static_cast<std::uint64_t>(den / g);
    const auto l = detail::checked_lcm(acc, tj);
    if (!l) {
      throw analysis_error("period_up_to_phase: lcm exceeds the 64-bit integer range");
    }
    acc = *l;
  }
  return acc;
}

/// Rationalize every eigenphase and classify: periodic iff all of them admit
/// a p/q under (q_max, eps). Fills the rational, classification and period
/// fields of the analysis in place.
inline Classification classify(SpectrumAnalysis& analysis,
                               std::int64_t q_max = default_q_max,
                               double eps = default_eps) {
  analysis.q_max = q_max;
  analysis.eps = eps;
  analysis.rational_approx.clear();
  analysis.rational_approx.reserve(analysis.args_over_2pi.size());
  bool all_rational = true;
  for (double a : analysis.args_over_2pi) {
    auto r = rationalize(a, q_max, eps);
    all_rational = all_rational && r.has_value();
    analysis.rational_approx.push_back(r);
  }
  analysis.classification =
      all_rational ? Classification::periodic : Classification::quasi_periodic;
  if (all_rational) {
    analysis.predicted_period = predict_period(analysis);
    analysis.period_up_to_phase = period_up_to_phase(analysis);
  } else {
    analysis.predicted_period.reset();
    analysis.period_up_to_phase.reset();
  }
  return *analysis.classification;
}

struct Revival {
  long t = 0;
  double fidelity = 0.0;
};

/// First t >= 1 with |<s0|U^t s0>| >= threshold, insensitive to global phase.
inline std::optional<Revival> revival_time(const GlobalUnitary& u, const WalkerState& s0,
                                           double fidelity_threshold, long t_max) {
  if (!(fidelity_threshold > 0.0 && fidelity_threshold <= 1.0)) {
    throw validation_error("revival_time: threshold must lie in (0, 1]");
  }
  if (t_max < 1) {
    throw validation_error("revival_time: t_max must be >= 1");
  }
  if (s0.dim() != u.dim()) {
    throw validation_error("revival_time: state/evolution dimension mismatch");
  }
  Eigen::VectorXcd state = s0.amplitudes;
  for (long t = 1; t <= t_max; ++t) {
    state = u.matrix() * state;
    const double fidelity = std::abs(s0.amplitudes.dot(state));
    if (fidelity >= fidelity_threshold) {
      return Revival{t, fidelity};
    }
  }
  return std::nullopt;
}

}  // namespace qwalk
