#include "waveqed/effective.hpp"

#include <cmath>

#include "waveqed/primitives.hpp"
#include "waveqed/single_photon.hpp"

namespace waveqed {

using prim::e1;

EffectiveVertexFunctions::Half::Half(double e_, const SystemParams& p)
    : e(e_), r(p.separation) {
  pref1 = std::sqrt(p.gamma2 / kPi);
  if (p.gamma1 * p.gamma2 == 0.0) return;
  zero = false;
  const RootData rd = compute_roots(e, p);
  const CoefficientSet cs = compute_coefficients(rd, r);
  roots = rd.roots;
  const Complex lam = rd.lambda, b = rd.asym, nu = rd.nu;
  pref2 = std::exp(-kI * (0.5 * e * r + p.phase)) /
          (2.0 * std::sqrt(kPi * p.gamma2));
  std::array<Complex, 4> a1{}, a2{};
  for (int j = 0; j < 4; ++j) {
    const Complex pj = rd.roots[j];
    const Complex ej = std::exp(kI * pj * r);
    a2[j] = pj * (1.0 - 2.0 * kI * lam * nu /
                            ((pj + b) * (pj + b) - lam * lam)) * ej;
    a1[j] = (pj - 2.0 * kI * lam * nu / (pj - lam + b)) * ej;
  }
  for (int l = 0; l < 4; ++l) {
    const Complex pl = rd.roots[l];
    const Complex bl = (pl + lam - b) * std::exp(kI * pl * r) / (2.0 * lam * nu);
    Complex col1{}, col2{};
    for (int j = 0; j < 4; ++j) {
      col1 += a1[j] * cs.c[j][l];
      col2 += a2[j] * cs.c[j][l];
    }
    s1[l] = col1 * bl;
    s2[l] = col2;
  }
}

Complex EffectiveVertexFunctions::Half::eval_f2p(double k) const {
  if (zero) return 0.0;
  const Complex a = 0.5 * e - k;
  Complex sum{};
  for (int l = 0; l < 4; ++l) sum += s2[l] * kI * e1(a + roots[l], r);
  return pref2 * sum;
}

Complex EffectiveVertexFunctions::Half::eval_f1p(double k) const {
  if (zero) return pref1;
  const Complex a = 0.5 * e - k;
  Complex sum{};
  for (int l = 0; l < 4; ++l) sum += s1[l] * (-kI) * e1(a - roots[l], r);
  return pref1 * (1.0 + sum);
}

EffectiveVertexFunctions::EffectiveVertexFunctions(double e,
                                                   const SystemParams& p)
    : direct_(e, p), swapped_(e, swapped_params(p)) {}

Complex EffectiveVertexFunctions::f2p(double k) const {
  return direct_.eval_f2p(k);
}
Complex EffectiveVertexFunctions::f1p(double k) const {
  return direct_.eval_f1p(k);
}
Complex EffectiveVertexFunctions::f1m(double k) const {
  return swapped_.eval_f2p(k);
}
Complex EffectiveVertexFunctions::f2m(double k) const {
  return swapped_.eval_f1p(k);
}

std::array<Complex, 2> EffectiveVertexFunctions::fvec(int gamma,
                                                      double k) const {
  return gamma == 1 ? std::array<Complex, 2>{f1p(k), f1m(k)}
                    : std::array<Complex, 2>{f2p(k), f2m(k)};
}

namespace {

// One orientation of the (b -> -b) symmetrized self-energy sum.
Complex sigma_half(Complex lam, Complex b, Complex nu, Complex s, Complex p1,
                   Complex p3, double r) {
  auto bracket = [&](Complex p) {
    return std::exp(kI * p * r) * (p + b - lam) +
           std::exp(-kI * p * r) * (p + lam - b);
  };
  auto brace = [&](Complex p) {
    return std::exp(kI * p * r) * (p + b - lam) -
           std::exp(-kI * p * r) * (p + lam - b);
  };
  const Complex br1 = bracket(p1), br3 = bracket(p3);
  const Complex den = p1 * p1 - 2.0 * b * p1 * brace(p1) / br1 - p3 * p3 +
                      2.0 * b * p3 * brace(p3) / br3;
  const Complex q1 = std::sin(p1 * r) / br1;
  const Complex q3 = std::sin(p3 * r) / br3;
  return -8.0 * kI * lam * lam * nu / den *
         ((nu + kI * b) * (q1 - q3) + kI * s * (q1 + q3));
}

}  // namespace

DoublyExcitedSector sigma_plus_plus(double e, const SystemParams& p) {
  DoublyExcitedSector out;
  const RootData rd = compute_roots(e, p);
  if (std::abs(rd.nu) != 0.0) {
    out.sigma_pp = sigma_half(rd.lambda, rd.asym, rd.nu, rd.inner_sqrt,
                              rd.roots[0], rd.roots[2], p.separation) +
                   sigma_half(rd.lambda, -rd.asym, rd.nu, rd.inner_sqrt,
                              rd.roots[0], rd.roots[2], p.separation);
  }
  const Complex den = 2.0 * rd.lambda - out.sigma_pp;
  out.singular =
      std::abs(den) < 1e-12 * (std::abs(rd.lambda) + std::abs(out.sigma_pp) + 1.0);
  out.g_pp = 1.0 / den;
  return out;
}

Complex sigma_pp_continued(Complex e, const SystemParams& p) {
  if (p.gamma1 * p.gamma2 == 0.0) return 0.0;
  const Complex osum = p.omega_tilde(1) + p.omega_tilde(2);
  const Complex lam = 0.5 * (e - osum);
  const Complex b = 0.5 * (p.omega_tilde(1) - p.omega_tilde(2));
  const Complex nu = 4.0 * kI * p.gamma1 * p.gamma2 *
                     std::exp(kI * (e * p.separation + 2.0 * p.phase)) /
                     (e - osum);
  const Complex s = std::sqrt(b * b - nu * nu);
  const Complex p1 = std::sqrt(lam * lam + b * b + 2.0 * lam * s);
  const Complex p3 = std::sqrt(lam * lam + b * b - 2.0 * lam * s);
  return sigma_half(lam, b, nu, s, p1, p3, p.separation) +
         sigma_half(lam, -b, nu, s, p1, p3, p.separation);
}

ReducibleTable w_reducible(double kp, double k, double e,
                           const SystemParams& p) {
  const EffectiveVertexFunctions f(e, p);
  const DoublyExcitedSector d = sigma_plus_plus(e, p);
  ReducibleTable t;
  for (int bp = 1; bp <= 2; ++bp)
    for (int b = 1; b <= 2; ++b)
      t.block[bp - 1][b - 1] =
          d.g_pp * Mat2::outer(f.fvec(3 - bp, kp), f.fvec(3 - b, k));
  return t;
}

Complex basis_phase(int beta, int channel, double k, const SystemParams& p) {
  const double arg =
      0.5 * sign_factor(channel) * sign_factor(beta) * (k * p.separation + p.phase);
  return std::exp(kI * arg);
}

PhotonBasisVertex full_w_photon_basis(int channel_out, int channel_in,
                                      double kp, double k, double e,
                                      const SystemParams& p) {
  const ComponentContext ctx(e, p);
  const VertexComponents v = ctx.all_components(kp, k);
  const ReducibleTable wr = w_reducible(kp, k, e, p);

  // Irreducible blocks per (beta', beta), one-excitation basis {|eg>,|ge>}:
  // rows/cols follow the operator slots P+- -> (0,0), P-+ -> (1,1),
  // sigma_+^1 sigma_-^2 -> (0,1), sigma_-^1 sigma_+^2 -> (1,0).
  std::array<std::array<Mat2, 2>, 2> wi{};
  wi[0][0] = Mat2{v.t12p, v.t22m, v.t22p, v.t32m};
  wi[0][1] = Mat2{v.t1p, v.t31m, v.t11p, v.t1m};
  wi[1][0] = Mat2{v.t2p, v.t12m, v.t32p, v.t2m};
  wi[1][1] = Mat2{v.t31p, v.t21m, v.t21p, v.t11m};

  PhotonBasisVertex out;
  for (int bp = 1; bp <= 2; ++bp) {
    const Complex ph_out = std::conj(basis_phase(bp, channel_out, kp, p));
    for (int b = 1; b <= 2; ++b) {
      const Complex ph = ph_out * basis_phase(b, channel_in, k, p);
      out.regular =
          out.regular + ph * (wi[bp - 1][b - 1] + wr.block[bp - 1][b - 1]);
    }
  }
  out.pole_coeff =
      Mat2::outer(ket_vertex(channel_in, k, p), bra_vertex(channel_out, kp, p));
  return out;
}

}  // namespace waveqed
