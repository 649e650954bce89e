#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "waveqed/vertex.hpp"

using namespace waveqed;

namespace {

SystemParams sample_params() { return {2.0, -2.0, 1.0, 1.0, 1.0, 0.0}; }

// general quartic solver via companion-matrix eigenvalues (oracle path)
std::array<Complex, 4> companion_roots(Complex c2, Complex c0) {
  // p^4 + c2 p^2 + c0 = 0
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 3) = -c0;
  m(1, 0) = 1.0;
  m(2, 1) = 1.0;
  m(2, 3) = -c2;
  m(3, 2) = 1.0;
  const auto ev = m.eigenvalues();
  return {ev(0), ev(1), ev(2), ev(3)};
}

}  // namespace

TEST_CASE("root residuals satisfy the quartic") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> g(0.05, 2.0);
  for (int i = 0; i < 100; ++i) {
    SystemParams p{u(rng), u(rng), g(rng), g(rng), std::abs(u(rng)) + 0.2,
                   u(rng)};
    const RootData r = compute_roots(u(rng), p);
    CHECK(r.max_residual < 1e-10);
    CHECK(r.roots[1] == -r.roots[0]);
    CHECK(r.roots[3] == -r.roots[2]);
  }
}

TEST_CASE("decoupled limit factorizes the quartic") {
  SystemParams p{2.0, -2.0, 1.0, 0.0, 1.0, 0.0};
  const RootData r = compute_roots(0.4, p);
  CHECK(std::abs(r.nu) == 0.0);
  // nu = 0: p^2 = (lambda +- b)^2, the shifted single-qubit poles
  const Complex want1 = r.lambda + r.asym;
  const Complex want3 = r.lambda - r.asym;
  const bool direct = std::abs(r.roots[0] - want1) < 1e-12 ||
                      std::abs(r.roots[0] + want1) < 1e-12;
  const bool cross = std::abs(r.roots[2] - want3) < 1e-12 ||
                     std::abs(r.roots[2] + want3) < 1e-12;
  CHECK(direct);
  CHECK(cross);
}

TEST_CASE("roots agree with a companion-matrix quartic oracle") {
  const SystemParams p = sample_params();
  const RootData r = compute_roots(0.0, p);
  const Complex l2 = r.lambda * r.lambda, b2 = r.asym * r.asym;
  const auto oracle = companion_roots(
      -2.0 * (l2 + b2), (l2 - b2) * (l2 - b2) + 4.0 * l2 * r.nu * r.nu);
  for (const Complex& mine : r.roots) {
    double best = 1e300;
    for (const Complex& ref : oracle)
      best = std::min(best, std::abs(mine - ref));
    CHECK(best < 1e-10);
  }
}

TEST_CASE("tracked roots stay continuous along an energy sweep") {
  const SystemParams p = sample_params();
  std::vector<double> grid;
  for (int i = 0; i <= 400; ++i) grid.push_back(-6.0 + 12.0 * i / 400.0);
  const auto rs = compute_roots_tracked(grid, p);
  for (std::size_t i = 1; i < rs.size(); ++i) {
    CHECK(std::abs(rs[i].roots[0] - rs[i - 1].roots[0]) < 0.25);
    CHECK(std::abs(rs[i].roots[2] - rs[i - 1].roots[2]) < 0.25);
    CHECK(rs[i].max_residual < 1e-10);
    // relabeling must keep the coefficient branch consistent
    const Complex lhs =
        rs[i].roots[0] * rs[i].roots[0] - rs[i].roots[2] * rs[i].roots[2];
    CHECK(std::abs(lhs - 4.0 * rs[i].lambda * rs[i].inner_sqrt) < 1e-9);
  }
}

TEST_CASE("coefficient symmetry pairs hold exactly") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> g(0.1, 1.5);
  for (int i = 0; i < 40; ++i) {
    SystemParams p{u(rng), u(rng), g(rng), g(rng), std::abs(u(rng)) + 0.3,
                   u(rng)};
    const RootData r = compute_roots(u(rng), p);
    const CoefficientSet c = compute_coefficients(r, p.separation);
    CHECK(c.c[0][2] == c.c[2][0]);
    CHECK(c.c[0][3] == c.c[3][0]);
    CHECK(c.c[1][2] == c.c[2][1]);
    CHECK(c.c[1][3] == c.c[3][1]);
    // derivative jumps live in the asymmetric pairs
    if (std::abs(r.nu) > 1e-6) {
      CHECK(std::abs(c.c[0][1] - c.c[1][0]) > 0.0);
      CHECK(std::abs(c.c[2][3] - c.c[3][2]) > 0.0);
    }
  }
}

TEST_CASE("symmetric qubits have a pure jump solution") {
  // b = 0 makes Z vanish; only the jump terms survive
  SystemParams p{1.0, 1.0, 0.7, 0.7, 1.3, 0.2};
  const RootData r = compute_roots(0.3, p);
  CHECK(std::abs(r.asym) == 0.0);
  const CoefficientSet c = compute_coefficients(r, p.separation);
  CHECK(std::abs(c.z) == 0.0);
  CHECK(std::abs(c.c[0][2]) == 0.0);  // cross terms all carry Z
  CHECK(std::abs(c.c[0][0]) > 0.0);
}

TEST_CASE("bracket and brace auxiliaries") {
  const SystemParams p = sample_params();
  const RootData r = compute_roots(0.7, p);
  const CoefficientSet c = compute_coefficients(r, p.separation);
  for (int j = 0; j < 4; ++j) {
    const Complex pj = r.roots[j];
    const Complex ep = std::exp(kI * pj * p.separation);
    const Complex br =
        ep * (pj + r.asym - r.lambda) + (pj + r.lambda - r.asym) / ep;
    CHECK(std::abs(c.bracket[j] - br) < 1e-13 * (1.0 + std::abs(br)));
    // [p] + {p} = 2 e^{ipR} (p + b - lambda)
    const Complex sum = c.bracket[j] + c.brace[j];
    CHECK(std::abs(sum - 2.0 * ep * (pj + r.asym - r.lambda)) <
          1e-12 * (1.0 + std::abs(sum)));
  }
}
