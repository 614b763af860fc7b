#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <limits>
#include <vector>

namespace qwalk {

using Complex = std::complex<double>;
using SparseMatrixXcd = Eigen::SparseMatrix<Complex>;

// Tolerances assume double-precision amplitudes throughout.
inline constexpr double unitarity_tol = 1e-12;
inline constexpr double norm_tol = 1e-9;
inline constexpr double state_norm_check_tol = 1e-6;

/// max-norm of A†A - I; zero for an exactly unitary matrix.
inline double unitarity_defect(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  Eigen::MatrixXcd p = m.adjoint() * m;
  p.diagonal().array() -= 1.0;
  return p.cwiseAbs().maxCoeff();
}

inline double unitarity_defect(const SparseMatrixXcd& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  SparseMatrixXcd adj = SparseMatrixXcd(m.adjoint());
  SparseMatrixXcd p = adj * m;
  double defect = 0.0;
  std::vector<char> diag_seen(static_cast<size_t>(p.cols()), 0);
  for (int k = 0; k < p.outerSize(); ++k) {
    for (SparseMatrixXcd::InnerIterator it(p, k); it; ++it) {
      const double target = (it.row() == it.col()) ? 1.0 : 0.0;
      if (it.row() == it.col()) diag_seen[static_cast<size_t>(it.col())] = 1;
      defect = std::max(defect, std::abs(it.value() - target));
    }
  }
  for (char seen : diag_seen) {
    if (!seen) defect = std::max(defect, 1.0);  // missing diagonal entry
  }
  return defect;
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const SparseMatrixXcd& a, const SparseMatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  SparseMatrixXcd d = a - b;
  double out = 0.0;
  for (int k = 0; k < d.outerSize(); ++k) {
    for (SparseMatrixXcd::InnerIterator it(d, k); it; ++it) {
      out = std::max(out, std::abs(it.value()));
    }
  }
  return out;
}

}  // namespace qwalk
