#include "doctest.h"
#include "waveqed/single_photon.hpp"

#include <cmath>
#include <random>

using namespace waveqed;

namespace {
SystemParams transparency(double omega = 1.0, double r = 1.0) {
  return {omega, -omega, 0.5 * omega, 0.5 * omega, r, 0.0};
}
}  // namespace

TEST_CASE("individual qubit amplitudes at the transparency point") {
  // t^{(1,2)} = e^{+-i pi/4}/sqrt2, r^{(1,2)} = -e^{-+i pi/4}/sqrt2 at k = 0
  const SystemParams p = transparency();
  const auto a = qubit_amplitudes(0.0, p);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(a.t1.real() == doctest::Approx(s * std::cos(kPi / 4)).epsilon(1e-12));
  CHECK(a.t1.imag() == doctest::Approx(s * std::sin(kPi / 4)).epsilon(1e-12));
  CHECK(a.t2 == Complex(a.t1.real(), -a.t1.imag()));
  CHECK(std::abs(a.r1 + s * std::exp(-kI * kPi / 4.0)) < 1e-12);
  CHECK(std::abs(a.r2 + s * std::exp(kI * kPi / 4.0)) < 1e-12);
}

TEST_CASE("decoupled and resonant qubits") {
  SystemParams p{0.7, -0.3, 0.0, 0.0, 1.0, 0.0};
  const auto a = qubit_amplitudes(0.4, p);
  CHECK(a.t1 == Complex(1.0, 0.0));
  CHECK(a.r1 == Complex(0.0, 0.0));

  SystemParams q{0.7, -0.3, 0.5, 0.4, 1.0, 0.0};
  const auto b = qubit_amplitudes(0.7, q);  // k = Omega_1
  CHECK(std::abs(b.t1) < 1e-14);
  CHECK(std::abs(b.r1) == doctest::Approx(1.0).epsilon(1e-12));
  // per-qubit unitarity |t|^2 + |r|^2 = 1 and t = 1 + r
  CHECK(std::norm(b.t2) + std::norm(b.r2) == doctest::Approx(1.0));
  CHECK(std::abs(b.t2 - (1.0 + b.r2)) < 1e-14);
}

TEST_CASE("m factor limits") {
  SystemParams p{2.0, -2.0, 0.0, 1.0, 1.0, 0.0};
  CHECK(m_factor(0.0, p).value == Complex(0.0, 0.0));

  // symmetric modulus identity |m| = 2 Gamma / |E - Omega~| for equal qubits
  SystemParams sym{1.0, 1.0, 0.8, 0.8, 2.0, 0.4};
  const double e = 0.3;
  const auto m = m_factor(e, sym);
  const double expect = 2.0 * 0.8 / std::abs(Complex(e, 0) - sym.omega_tilde(1));
  CHECK(std::abs(m.value) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("green function matches the branch-free explicit form") {
  // main-text form rebuilt from m(E) against the explicit-matrix form
  SystemParams p{2.0, -2.0, 1.0, 1.0, 1.0, 0.0};
  for (double e : {0.0, 0.7, -1.3, 3.9}) {
    const Mat2 m = green_one_excitation(e, p);
    const Complex mf = m_factor(e, p).value;
    const Complex d1 = e - p.omega_tilde(1), d2 = e - p.omega_tilde(2);
    const Complex sq = std::sqrt(d1 * d2);
    const Complex denom = 1.0 - mf * mf;
    CHECK(std::abs(m.a00 - 1.0 / (d1 * denom)) < 1e-12);
    CHECK(std::abs(m.a11 - 1.0 / (d2 * denom)) < 1e-12);
    CHECK(std::abs(m.a01 - mf / (sq * denom)) < 1e-12);
  }
}

TEST_CASE("green function decoupled limit and inverse") {
  SystemParams p{0.4, -0.9, 0.6, 0.0, 0.0, 0.0};
  const Complex e{0.3, 0.2};
  const Mat2 m = green_one_excitation(e, p);
  CHECK(std::abs(m.a00 - 1.0 / (e - p.omega_tilde(1))) < 1e-14);
  CHECK(std::abs(m.a11 - 1.0 / (e - Complex(-0.9, 0.0))) < 1e-14);
  CHECK(std::abs(m.a01) < 1e-14);

  SystemParams q{2.0, -2.0, 1.0, 0.5, 1.3, 0.7};
  const Mat2 g = green_one_excitation(0.37, q);
  // rebuild the inverse explicitly and check M M^{-1} = 1
  const Complex det = g.a00 * g.a11 - g.a01 * g.a10;
  const Mat2 inv{g.a11 / det, -g.a01 / det, -g.a10 / det, g.a00 / det};
  const Mat2 id = g * inv;
  CHECK(std::abs(id.a00 - 1.0) < 1e-12);
  CHECK(std::abs(id.a01) < 1e-12);
}

TEST_CASE("green divided difference is exact") {
  SystemParams p{2.0, -2.0, 1.0, 0.7, 1.4, 0.2};
  const double e = 0.31;
  SUBCASE("finite step equals the literal difference") {
    for (double x : {0.9, 1e-3}) {
      const Mat2 lhs = green_divided_difference(e, x, p);
      const Mat2 a = green_one_excitation(e + x, p);
      const Mat2 b = green_one_excitation(e, p);
      const Mat2 rhs = (a - b) * (1.0 / x);
      CHECK((lhs - rhs).max_abs() < 1e-9 * rhs.max_abs());
    }
  }
  SUBCASE("x = 0 gives the analytic derivative") {
    const Mat2 d0 = green_divided_difference(e, 0.0, p);
    const double h = 1e-6;
    const Mat2 fd = (green_one_excitation(e + h, p) -
                     green_one_excitation(e - h, p)) *
                    (1.0 / (2.0 * h));
    CHECK((d0 - fd).max_abs() < 1e-8 * fd.max_abs());
  }
}

TEST_CASE("mbar diagonal") {
  SystemParams p{2.0, -2.0, 1.0, 1.0, 0.0, 0.0};
  const auto m = mbar_diagonal(0.4, 1.1, p);
  CHECK(std::abs(m.plus - 1.0 / (1.1 - 0.4 - p.omega_tilde(1))) < 1e-14);
  CHECK(std::abs(m.minus - 1.0 / (1.1 - 0.4 - p.omega_tilde(2))) < 1e-14);

  SystemParams free{0.7, 0.0, 0.0, 0.0, 1.0, 0.0};
  const auto f = mbar_diagonal(0.4, 1.1, free);  // E - k1 = Omega_1: real pole
  CHECK(f.near_pole);
}

TEST_CASE("transparency configuration is fully transmitting") {
  const SystemParams p = transparency(1.0, 3.7);
  const S1Matrix s = s1_matrix(0.0, p);
  CHECK(std::abs(s.s11 - 1.0) < 1e-12);
  CHECK(std::abs(s.s22 - 1.0) < 1e-12);
  CHECK(std::abs(s.s12) < 1e-12);
  CHECK(std::abs(s.s21) < 1e-12);
}

TEST_CASE("single scatterer limit keeps only the position phase") {
  SystemParams p{0.8, 0.0, 0.6, 0.0, 1.9, 0.35};
  const double k = 0.23;
  const auto a = qubit_amplitudes(k, p);
  const S1Matrix s = s1_matrix(k, p);
  const Complex ph = std::exp(kI * (k * p.separation + p.phase));
  CHECK(std::abs(s.s11 - a.t1) < 1e-14);
  CHECK(std::abs(s.s12 - a.r1 / ph) < 1e-14);
  CHECK(std::abs(s.s21 - a.r1 * ph) < 1e-14);
}

TEST_CASE("unitarity over random momenta and parameters") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::uniform_real_distribution<double> g(0.01, 2.5);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    SystemParams p{u(rng), u(rng), g(rng), g(rng), std::abs(u(rng)), u(rng)};
    const S1Matrix s = s1_matrix(u(rng), p);
    worst = std::max(worst, s1_unitarity_defect(s));
    CHECK(std::abs(s.s11 - s.s22) < 1e-15);  // reciprocity, formula-level
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("closed form equals the M-matrix contraction") {
  // S_{a'a} = delta - 2 pi i <gg| v_{s'} M(k) v_s^dag |gg>
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> g(0.05, 2.0);
  for (int i = 0; i < 200; ++i) {
    SystemParams p{u(rng), u(rng), g(rng), g(rng), std::abs(u(rng)) + 0.1,
                   u(rng)};
    const double k = u(rng);
    const Mat2 m = green_one_excitation(k, p);
    const S1Matrix s = s1_matrix(k, p);
    for (int out = 1; out <= 2; ++out)
      for (int in = 1; in <= 2; ++in) {
        const Complex direct =
            (out == in ? 1.0 : 0.0) -
            2.0 * kPi * kI * sandwich(bra_vertex(out, k, p), m,
                                      ket_vertex(in, k, p));
        CHECK(std::abs(s(out, in) - direct) < 1e-12);
      }
  }
}

TEST_CASE("qubit swap exchanges channels for phi in {0, pi}") {
  for (double phi : {0.0, kPi}) {
    SystemParams p{1.3, -0.4, 0.8, 0.3, 2.1, phi};
    const double k = 0.57;
    const S1Matrix s = s1_matrix(k, p);
    const S1Matrix sw = s1_matrix(k, swapped_params(p));
    CHECK(std::abs(sw.s11 - s.s22) < 1e-12);
    CHECK(std::abs(sw.s12 - s.s21) < 1e-12);
    CHECK(std::abs(sw.s21 - s.s12) < 1e-12);
  }
}
