#include "doctest.h"

#include <cmath>

#include "waveqed/effective.hpp"
#include "waveqed/oracle.hpp"
#include "waveqed/single_photon.hpp"

using namespace waveqed;

namespace {
double rel(Complex a, Complex b) {
  return std::abs(a - b) / (std::max(std::abs(a), std::abs(b)) + 1e-300);
}
}  // namespace

TEST_CASE("decoupling the second qubit") {
  SystemParams p{2.0, -2.0, 1.0, 0.0, 1.0, 0.0};
  const EffectiveVertexFunctions f(0.0, p);
  // f^{2+} loses its prefactor, f^{1+} reduces to sqrt(Gamma_2/pi) = 0,
  // while f^{2-} keeps its bare part sqrt(Gamma_1/pi)
  CHECK(f.f2p(0.3) == Complex{});
  CHECK(f.f1p(0.3) == Complex{});
  CHECK(f.f1m(0.3) == Complex{});
  CHECK(f.f2m(0.3) == Complex(std::sqrt(1.0 / kPi), 0.0));

  const DoublyExcitedSector d = sigma_plus_plus(0.0, p);
  CHECK(d.sigma_pp == Complex{});
  const Complex gexp = 1.0 / (0.0 - p.omega_tilde(1) - Complex(-2.0, 0.0));
  CHECK(rel(d.g_pp, gexp) < 1e-14);
}

TEST_CASE("parameter-exchange relations among the f functions") {
  SystemParams p{1.3, -0.7, 0.9, 0.4, 1.5, 0.2};
  const EffectiveVertexFunctions f(0.3, p);
  const EffectiveVertexFunctions fs(0.3, swapped_params(p));
  for (double k : {-0.8, 0.1, 0.9}) {
    CHECK(rel(f.f1m(k), fs.f2p(k)) < 1e-13);
    CHECK(rel(f.f2m(k), fs.f1p(k)) < 1e-13);
  }
}

TEST_CASE("f functions are not real-valued") {
  SystemParams p{2.0, -2.0, 1.0, 1.0, 1.0, 0.0};
  const EffectiveVertexFunctions f(0.0, p);
  bool complex_seen = false;
  for (double k : {-0.5, 0.2, 0.7})
    if (std::abs(std::imag(f.f2p(k))) > 1e-10 ||
        std::abs(std::imag(f.f1p(k))) > 1e-10)
      complex_seen = true;
  CHECK(complex_seen);
}

TEST_CASE("self-energy is symmetric under the qubit exchange") {
  // swapping the qubits flips b and leaves lambda, nu unchanged
  SystemParams p{1.1, -0.4, 0.8, 0.3, 1.2, 0.6};
  const DoublyExcitedSector a = sigma_plus_plus(0.25, p);
  const DoublyExcitedSector b = sigma_plus_plus(0.25, swapped_params(p));
  CHECK(rel(a.sigma_pp, b.sigma_pp) < 1e-13);
}

TEST_CASE("reducible table layout and rank-one structure") {
  SystemParams p{2.0, -2.0, 1.0, 1.0, 1.0, 0.0};
  const double kp = 0.4, k = -0.3, e = 0.0;
  const ReducibleTable t = w_reducible(kp, k, e, p);
  const EffectiveVertexFunctions f(e, p);
  const DoublyExcitedSector d = sigma_plus_plus(e, p);
  // (beta'=1, beta=2) block, P_+- slot: f_{k'}^{2+} f_k^{1+} g_++
  CHECK(rel(t.block[0][1].a00, f.f2p(kp) * f.f1p(k) * d.g_pp) < 1e-14);
  // sigma_-^1 sigma_+^2 slot of the same block: f^{2-}_{k'} f^{1+}_k g_++
  CHECK(rel(t.block[0][1].a10, f.f2m(kp) * f.f1p(k) * d.g_pp) < 1e-14);
  // each fixed operator slot forms a rank-one matrix over (beta', beta)
  for (auto slot : {&Mat2::a00, &Mat2::a01, &Mat2::a10, &Mat2::a11}) {
    const Complex m00 = t.block[0][0].*slot, m01 = t.block[0][1].*slot;
    const Complex m10 = t.block[1][0].*slot, m11 = t.block[1][1].*slot;
    CHECK(std::abs(m00 * m11 - m01 * m10) <
          1e-12 * (std::abs(m00 * m11) + std::abs(m01 * m10) + 1e-30));
  }
}

TEST_CASE("photon-basis vertex reduces to a plain block sum at R=0, phi=0") {
  SystemParams p{1.0, -0.5, 0.6, 0.4, 0.0, 0.0};
  const double kp = 0.3, k = 0.1, e = 0.2;
  const PhotonBasisVertex w = full_w_photon_basis(1, 2, kp, k, e, p);
  const ComponentContext ctx(e, p);
  const VertexComponents v = ctx.all_components(kp, k);
  const ReducibleTable t = w_reducible(kp, k, e, p);
  Mat2 expect = Mat2{v.t12p, v.t22m, v.t22p, v.t32m} +
                Mat2{v.t1p, v.t31m, v.t11p, v.t1m} +
                Mat2{v.t2p, v.t12m, v.t32p, v.t2m} +
                Mat2{v.t31p, v.t21m, v.t21p, v.t11m};
  for (int bp = 0; bp < 2; ++bp)
    for (int b = 0; b < 2; ++b) expect = expect + t.block[bp][b];
  CHECK((w.regular - expect).max_abs() < 1e-12 * (expect.max_abs() + 1.0));
  // and the pole coefficient loses all phases: outer product of couplings
  CHECK(rel(w.pole_coeff.a00, Complex(p.gamma1 / kPi, 0.0)) < 1e-14);
  CHECK(rel(w.pole_coeff.a11, Complex(p.gamma2 / kPi, 0.0)) < 1e-14);
  CHECK(rel(w.pole_coeff.a01,
            Complex(std::sqrt(p.gamma1 * p.gamma2) / kPi, 0.0)) < 1e-14);
}

TEST_CASE("basis phases have unit modulus") {
  SystemParams p{1.0, -0.5, 0.6, 0.4, 2.3, 1.1};
  for (int beta : {1, 2})
    for (int alpha : {1, 2})
      CHECK(std::abs(basis_phase(beta, alpha, 0.73, p)) ==
            doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("single-qubit limit keeps only the uncoupled reducible entry") {
  SystemParams p{2.0, -2.0, 1.0, 0.0, 1.0, 0.0};
  const ReducibleTable t = w_reducible(0.4, -0.3, 0.0, p);
  // only f^{2-} survives: the (beta'=1, beta=1) P_-+ slot. It decouples
  // from every amplitude because the vertices live on the first qubit.
  CHECK(std::abs(t.block[0][0].a11) > 0.0);
  CHECK(std::abs(t.block[0][0].a00) == 0.0);
  CHECK(std::abs(t.block[0][1].a00) == 0.0);
  CHECK(std::abs(t.block[1][1].a11) == 0.0);
}

TEST_CASE("g_++ keeps a finite decay width") {
  SystemParams p{2.0, -2.0, 1.0, 1.0, 1.0, 0.0};
  const DoublyExcitedSector d = sigma_plus_plus(0.0, p);
  CHECK_FALSE(d.singular);
  CHECK(std::abs(std::imag(1.0 / d.g_pp)) > 1.0);
}
