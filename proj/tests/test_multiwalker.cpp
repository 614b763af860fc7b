#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "qwalk/multiwalker.hpp"

using namespace qwalk;

namespace {

Eigen::MatrixXcd splitter_50_50() {
  const double rt = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd u(2, 2);
  u << rt, rt, rt, -rt;
  return u;
}

GlobalUnitary line_unitary(int n, double delta) {
  const Graph g = make_line(n);
  return build_unitary(g, assign_uniform(g, hadamard_biased(delta)));
}

}  // namespace

TEST_CASE("pair indexing is a bijection over unordered pairs", "[multiwalker]") {
  for (int n : {1, 2, 5, 9}) {
    std::vector<char> seen(static_cast<size_t>(pair_count(n)), 0);
    for (int k = 1; k <= n; ++k) {
      for (int l = k; l <= n; ++l) {
        const int idx = pair_index(k, l, n);
        REQUIRE(idx >= 0);
        REQUIRE(idx < pair_count(n));
        REQUIRE(!seen[static_cast<size_t>(idx)]);
        seen[static_cast<size_t>(idx)] = 1;
        REQUIRE(pair_index(l, k, n) == idx);  // unordered
      }
    }
  }
}

TEST_CASE("two-photon inputs", "[multiwalker]") {
  SECTION("distinct modes")
  {
    const TwoWalkerState s = two_photon_input(4, 1, 2);
    REQUIRE(std::abs(s.at(1, 2) - Complex(1, 0)) < 1e-15);
    REQUIRE(std::abs(s.norm() - 1.0) < 1e-15);
  }
  SECTION("doubly occupied mode") {
    const TwoWalkerState s = two_photon_input(4, 3, 3);
    REQUIRE(std::abs(s.at(3, 3) - Complex(1, 0)) < 1e-15);
  }
  SECTION("mode order does not matter") {
    const TwoWalkerState a = two_photon_input(4, 1, 2);
    const TwoWalkerState b = two_photon_input(4, 2, 1);
    REQUIRE((a.coeffs - b.coeffs).norm() == 0.0);
  }
  SECTION("modes out of range are rejected") {
    REQUIRE_THROWS_AS(two_photon_input(4, 0, 2), validation_error);
    REQUIRE_THROWS_AS(two_photon_input(4, 1, 5), validation_error);
  }
}

TEST_CASE("evolve_two", "[multiwalker]") {
  SECTION("identity leaves the input unchanged") {
    const TwoWalkerState s = two_photon_input(3, 1, 2);
    const TwoWalkerState out = evolve_two(Eigen::MatrixXcd::Identity(3, 3), s);
    REQUIRE((out.coeffs - s.coeffs).norm() < 1e-15);
  }
  SECTION("a balanced splitter suppresses the coincidence term") {
    const TwoWalkerState out = evolve_two(splitter_50_50(), two_photon_input(2, 1, 2));
    const double rt = 1.0 / std::sqrt(2.0);
    REQUIRE(std::abs(out.at(1, 2)) < 1e-12);
    REQUIRE(std::abs(out.at(1, 1) - Complex(rt, 0)) < 1e-12);
    REQUIRE(std::abs(out.at(2, 2) - Complex(-rt, 0)) < 1e-12);
    REQUIRE(std::abs(out.norm() - 1.0) < 1e-12);
  }
  SECTION("dimension mismatches are rejected") {
    REQUIRE_THROWS_AS(evolve_two(Eigen::MatrixXcd::Identity(3, 3), two_photon_input(4, 1, 2)),
                      validation_error);
  }
}

TEST_CASE("evolve_two matches the brute-force Fock expansion", "[multiwalker][oracle]") {
  std::mt19937 rng(31);
  SECTION("walk unitaries, all basis inputs") {
    for (int n : {2, 3}) {
      const Eigen::MatrixXcd u = line_unitary(n, 0.5).dense();
      const int modes = n * n;
      for (int i = 1; i <= modes; ++i) {
        for (int j = i; j <= modes; ++j) {
          const TwoWalkerState in = two_photon_input(modes, i, j);
          const TwoWalkerState fast = evolve_two(u, in);
          const TwoWalkerState slow = oracles::fock_evolve(u, in);
          REQUIRE((fast.coeffs - slow.coeffs).cwiseAbs().maxCoeff() < 1e-12);
          REQUIRE(std::abs(fast.norm() - 1.0) < 1e-9);
        }
      }
    }
  }
  SECTION("random unitaries, random states") {
    for (int trial = 0; trial < 10; ++trial) {
      const int modes = 4;
      const Eigen::MatrixXcd u = oracles::random_unitary(modes, rng);
      TwoWalkerState in = TwoWalkerState::zero(modes);
      in.coeffs = oracles::random_state(pair_count(modes), rng);
      const TwoWalkerState fast = evolve_two(u, in);
      const TwoWalkerState slow = oracles::fock_evolve(u, in);
      REQUIRE((fast.coeffs - slow.coeffs).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("evolve_two is linear and composes", "[multiwalker]") {
  std::mt19937 rng(37);
  const int modes = 9;
  const Eigen::MatrixXcd u1 = line_unitary(3, 0.5).dense();
  const Eigen::MatrixXcd u2 = line_unitary(3, 0.3).dense();
  SECTION("linearity in the state coefficients") {
    for (int trial = 0; trial < 10; ++trial) {
      TwoWalkerState s1 = TwoWalkerState::zero(modes);
      TwoWalkerState s2 = TwoWalkerState::zero(modes);
      s1.coeffs = oracles::random_state(pair_count(modes), rng);
      s2.coeffs = oracles::random_state(pair_count(modes), rng);
      const Complex a(0.3, -0.8), b(-1.1, 0.2);
      TwoWalkerState mix = TwoWalkerState::zero(modes);
      mix.coeffs = a * s1.coeffs + b * s2.coeffs;
      const Eigen::VectorXcd direct = evolve_two(u1, mix).coeffs;
      const Eigen::VectorXcd combined =
          a * evolve_two(u1, s1).coeffs + b * evolve_two(u1, s2).coeffs;
      REQUIRE((direct - combined).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SECTION("two applications equal the product unitary") {
    for (int trial = 0; trial < 10; ++trial) {
      TwoWalkerState s = TwoWalkerState::zero(modes);
      s.coeffs = oracles::random_state(pair_count(modes), rng);
      const Eigen::VectorXcd chained = evolve_two(u2, evolve_two(u1, s)).coeffs;
      const Eigen::VectorXcd merged = evolve_two(Eigen::MatrixXcd(u2 * u1), s).coeffs;
      REQUIRE((chained - merged).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("separable inputs keep single-walker marginals", "[multiwalker][oracle]") {
  std::mt19937 rng(41);
  for (int n : {2, 3}) {
    const Eigen::MatrixXcd u = line_unitary(n, 0.5).dense();
    const int modes = n * n;
    std::uniform_int_distribution<int> pick(1, modes);
    for (int trial = 0; trial < 8; ++trial) {
      const int i = pick(rng);
      const int j = pick(rng);
      const TwoWalkerState out = evolve_two(u, two_photon_input(modes, i, j));
      const Eigen::VectorXd occupation = oracles::mode_occupation(out);
      // each photon's marginal is the single-walker evolution of its mode
      for (int k = 1; k <= modes; ++k) {
        const double expected = std::norm(u(k - 1, i - 1)) + std::norm(u(k - 1, j - 1));
        REQUIRE(std::abs(occupation[k - 1] - expected) < 1e-12);
      }
    }
  }
}

TEST_CASE("post-selection", "[multiwalker]") {
  SECTION("Hong-Ou-Mandel suppression at both output modes") {
    for (int m : {1, 2}) {
      const PostSelectionResult r = post_select(splitter_50_50(), 1, 2, m);
      REQUIRE(r.probability < 1e-12);
      REQUIRE_FALSE(r.conditional_state.has_value());
    }
  }
  SECTION("identity leaves the other photon where it started") {
    const PostSelectionResult r = post_select(Eigen::MatrixXcd::Identity(3, 3), 1, 2, 1);
    REQUIRE(std::abs(r.probability - 1.0) < 1e-12);
    REQUIRE(r.conditional_state.has_value());
    REQUIRE(std::abs((*r.conditional_state)[1] - Complex(1, 0)) < 1e-12);
  }
  SECTION("raw amplitudes follow the bilinear map") {
    const Eigen::MatrixXcd u = line_unitary(2, 0.5).dense();
    const int i = 1, j = 3, m = 2;
    const PostSelectionResult r = post_select(u, i, j, m);
    for (int k = 1; k <= 4; ++k) {
      const Complex expected = u(m - 1, i - 1) * u(k - 1, j - 1) +
                               u(m - 1, j - 1) * u(k - 1, i - 1);
      REQUIRE(std::abs(r.raw_amplitudes[k - 1] - expected) < 1e-15);
    }
  }
  SECTION("outcome distribution is complete") {
    for (int n : {2, 3}) {
      const Eigen::MatrixXcd u = line_unitary(n, 0.5).dense();
      const int modes = n * n;
      for (auto [i, j] : std::vector<std::pair<int, int>>{{1, 2}, {1, 1}, {2, modes}}) {
        const TwoWalkerState evolved = evolve_two(u, two_photon_input(modes, i, j));
        double total = 0.0;
        for (int k = 1; k <= modes; ++k) {
          for (int l = k; l <= modes; ++l) total += std::norm(evolved.at(k, l));
        }
        REQUIRE(std::abs(total - 1.0) < 1e-10);
        // post_select probabilities match the evolved outcome weights
        for (int m = 1; m <= modes; ++m) {
          double exactly_one = 0.0;
          for (int k = 1; k <= modes; ++k) {
            if (k != m) exactly_one += std::norm(evolved.at(m, k));
          }
          const PostSelectionResult r = post_select(u, i, j, m);
          REQUIRE(std::abs(r.probability - (exactly_one < 1e-12 ? 0.0 : exactly_one)) < 1e-12);
        }
      }
    }
  }
  SECTION("conditional amplitudes are linear in the input coefficients") {
    const Eigen::MatrixXcd u = line_unitary(2, 0.5).dense();
    const int modes = 4, m = 2;
    const Complex a(0.6, 0.1), b(-0.2, 0.7);
    // superpose inputs (1,2) and (3,4); compare against the evolved state
    TwoWalkerState mix = TwoWalkerState::zero(modes);
    mix.coeffs = a * two_photon_input(modes, 1, 2).coeffs +
                 b * two_photon_input(modes, 3, 4).coeffs;
    const TwoWalkerState evolved = evolve_two(u, mix);
    const Eigen::VectorXcd raw1 = post_select(u, 1, 2, m).raw_amplitudes;
    const Eigen::VectorXcd raw2 = post_select(u, 3, 4, m).raw_amplitudes;
    for (int k = 1; k <= modes; ++k) {
      if (k == m) continue;
      const Complex from_state = evolved.at(m, k);
      const Complex from_maps = a * raw1[k - 1] + b * raw2[k - 1];
      REQUIRE(std::abs(from_state - from_maps) < 1e-12);
    }
  }
  SECTION("mode indices are validated") {
    REQUIRE_THROWS_AS(post_select(splitter_50_50(), 0, 1, 1), validation_error);
    REQUIRE_THROWS_AS(post_select(splitter_50_50(), 1, 2, 3), validation_error);
  }
}

TEST_CASE("Meyer-Wallach for two walkers", "[multiwalker]") {
  SECTION("both photons in one mode is a product state") {
    REQUIRE(meyer_wallach_two(two_photon_input(2, 1, 1)) < 1e-15);
  }
  SECTION("NOON-like superposition over two modes gives 1/2") {
    TwoWalkerState s = TwoWalkerState::zero(2);
    s.at(1, 1) = Complex(1.0 / std::sqrt(2.0), 0);
    s.at(2, 2) = Complex(1.0 / std::sqrt(2.0), 0);
    REQUIRE(std::abs(meyer_wallach_two(s) - 0.5) < 1e-12);
  }
  SECTION("one photon in each of two modes is separable") {
    REQUIRE(meyer_wallach_two(two_photon_input(2, 1, 2)) < 1e-15);
  }
  SECTION("partial trace agrees with the occupation-probability closed form") {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
      const int modes = 5;
      TwoWalkerState s = TwoWalkerState::zero(modes);
      s.coeffs = oracles::random_state(pair_count(modes), rng);
      // each mode's reduced qutrit is diagonal: (p0, p1, p2) by photon count
      double purity = 0.0;
      for (int i = 1; i <= modes; ++i) {
        const double p2 = std::norm(s.at(i, i));
        double p1 = 0.0;
        for (int k = 1; k <= modes; ++k) {
          if (k != i) p1 += std::norm(s.at(i, k));
        }
        const double p0 = 1.0 - p1 - p2;
        purity += p0 * p0 + p1 * p1 + p2 * p2;
      }
      const double expected = 1.0 - purity / modes;
      REQUIRE(std::abs(meyer_wallach_two(s) - expected) < 1e-12);
    }
  }
  SECTION("non-normalized input is rejected") {
    TwoWalkerState s = TwoWalkerState::zero(2);
    s.at(1, 1) = Complex(2.0, 0);
    REQUIRE_THROWS_AS(meyer_wallach_two(s), validation_error);
  }
}
