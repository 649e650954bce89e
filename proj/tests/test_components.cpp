#include "doctest.h"

#include <cmath>

#include "waveqed/oracle.hpp"
#include "waveqed/quadrature.hpp"
#include "waveqed/vertex.hpp"

using namespace waveqed;

namespace {

SystemParams transparency_r(double gamma_r) {
  return {2.0, -2.0, 1.0, 1.0, gamma_r, 0.0};
}

double rel(Complex a, Complex b) {
  return std::abs(a - b) / (std::max(std::abs(a), std::abs(b)) + 1e-300);
}

// quadrature of the T^{(1)2+} double integral over the closed-form kernel
Complex t12p_by_quadrature(const BaseComponents& bc, const SystemParams& p,
                           double e, double kp, double k) {
  const auto& r = bc.roots();
  const auto& c = bc.coeffs();
  const Complex ap = 0.5 * e - kp, a = 0.5 * e - k;
  const auto outer = [&](double x_p) {
    const auto inner = [&](double x) {
      return std::exp(kI * (ap * x_p + a * x)) * kernel_f(x_p, x, c, r);
    };
    return quad::integrate(inner, 0.0, x_p, 2e-12) +
           quad::integrate(inner, x_p, p.separation, 2e-12);
  };
  return -kI * p.gamma1 / kPi *
         quad::integrate(outer, 0.0, p.separation, 1e-11);
}

}  // namespace

TEST_CASE("components vanish when a coupling is switched off") {
  SystemParams p{2.0, -2.0, 0.0, 1.0, 1.0, 0.0};
  const BaseComponents bc(0.0, p);
  CHECK(bc.t12p_reg(0.3, -0.4) == Complex{});
  CHECK(bc.t22p(0.3, -0.4) == Complex{});
  CHECK(bc.t02p(0.3, -0.4) == Complex{});
}

TEST_CASE("regular part of the base component is symmetric in k and k'") {
  const SystemParams p = transparency_r(1.0);
  const BaseComponents bc(0.0, p);
  for (double kp : {0.3, -0.8})
    for (double k : {0.55, -0.15}) {
      CHECK(rel(bc.t12p_reg(kp, k), bc.t12p_reg(k, kp)) < 1e-13);
      CHECK(rel(bc.t31p(kp, k), bc.t31p(k, kp)) < 1e-13);
    }
}

TEST_CASE("closed-form double integral matches adaptive quadrature") {
  // Gamma R = 10 exercises the strongly oscillatory regime
  for (double gr : {1.0, 10.0}) {
    const SystemParams p = transparency_r(gr);
    const BaseComponents bc(0.0, p);
    const double kp = 0.3, k = -0.3;
    const Complex closed = bc.t12p_reg(kp, k);
    const Complex brute = t12p_by_quadrature(bc, p, 0.0, kp, k);
    CAPTURE(gr);
    CHECK(rel(closed, brute) < 1e-8);
  }
}

TEST_CASE("qubit exchange symmetry chains reach each component both ways") {
  SystemParams p{1.4, -0.6, 0.8, 0.5, 1.7, 0.4};  // no accidental symmetry
  const ComponentContext ctx(0.2, p);
  const double kp = 0.45, k = -0.3;
  const VertexComponents v = ctx.all_components(kp, k);
  const VertexComponents vt = ctx.all_components(k, kp);

  // a = 0 family: transposition relates the two unsuperscripted components
  CHECK(rel(v.t1p, vt.t2p) < 1e-13);
  CHECK(rel(v.t2m, vt.t1m) < 1e-13);
  // a = 2 family
  CHECK(rel(v.t22m, vt.t22p) < 1e-13);
  CHECK(rel(v.t21p, vt.t21m) < 1e-13);
  // a = 1 and a = 3: the I image equals the T image
  CHECK(rel(v.t12m, vt.t11p) < 1e-12);
  CHECK(rel(v.t31m, ctx.swapped().t32p(kp, k)) < 1e-12);
}

TEST_CASE("symmetric qubits make the exchange a fixed point") {
  SystemParams p{0.9, 0.9, 0.7, 0.7, 1.2, 0.1};
  const ComponentContext ctx(0.3, p);
  const VertexComponents v = ctx.all_components(0.4, -0.2);
  CHECK(rel(v.t1p, v.t1m) < 1e-13);
  CHECK(rel(v.t2p, v.t2m) < 1e-13);
  CHECK(rel(v.t12p, v.t11m) < 1e-13);
  CHECK(rel(v.t31p, v.t32m) < 1e-13);
}

TEST_CASE("degenerate-root neighborhoods average and flag") {
  SystemParams p{0.0, 0.0, 0.5, 0.5, 1.0, 0.0};
  // b = 0 but nu != 0, so b^2 - nu^2 != 0: not degenerate
  CHECK_FALSE(compute_roots(0.1, p).degenerate);
  // engineered coincidence: at E = 0, phi = 0, omega1 = -omega2 = 1 and
  // Gamma1 = Gamma2 = 1 give b = 1 and nu = 4i/(4i) = 1 exactly
  SystemParams q{1.0, -1.0, 1.0, 1.0, 2.0, 0.0};
  CHECK(compute_roots(0.0, q).degenerate);
  const ComponentContext ctx(0.0, q);
  CHECK(ctx.degenerate_averaged());
  const VertexComponents v = ctx.all_components(0.2, -0.2);
  CHECK(std::isfinite(v.t12p.real()));
  CHECK(std::isfinite(v.t2p.imag()));
}

TEST_CASE("tagged operations expose the pole coefficients") {
  SystemParams p{2.0, -2.0, 1.0, 0.5, 1.0, 0.0};
  const BaseComponents bc(0.0, p);
  const TaggedAmplitude t12 = t_1_2plus(0.3, -0.2, bc);
  CHECK(t12.pole_coefficient == Complex(p.gamma1 / kPi, 0.0));
  CHECK(t12.regular == bc.t12p_reg(0.3, -0.2));
  const ConvolutionComponents conv = t_convolutions(0.3, -0.2, bc);
  CHECK(conv.t11p.pole_coefficient ==
        Complex(std::sqrt(p.gamma1 * p.gamma2) / kPi, 0.0));
  CHECK(conv.t02p == bc.t02p(0.3, -0.2));
}
