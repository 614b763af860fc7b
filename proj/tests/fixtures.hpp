// Hand-transcribed global evolution matrices for the 2- and 3-vertex lines
// with balanced Hadamard coins, used as exact fixtures.
#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace fixtures {

inline Eigen::MatrixXcd two_line_unitary() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd u(4, 4);
  u << 1, 1, 0, 0,
       0, 0, 1, 1,
       1, -1, 0, 0,
       0, 0, 1, -1;
  return s * u;
}

inline Eigen::MatrixXcd three_line_unitary() {
  const double s = 1.0 / std::sqrt(2.0);
  const double r2 = std::sqrt(2.0);
  Eigen::MatrixXcd u(9, 9);
  u << 1, 1, 0, 0, 0, 0, 0, 0, 0,
       0, 0, 0, 1, 0, 1, 0, 0, 0,
       0, 0, 0, 0, 0, 0, r2, 0, 0,
       1, -1, 0, 0, 0, 0, 0, 0, 0,
       0, 0, 0, 0, r2, 0, 0, 0, 0,
       0, 0, 0, 0, 0, 0, 0, 1, 1,
       0, 0, r2, 0, 0, 0, 0, 0, 0,
       0, 0, 0, 1, 0, -1, 0, 0, 0,
       0, 0, 0, 0, 0, 0, 0, 1, -1;
  return s * u;
}

}  // namespace fixtures
