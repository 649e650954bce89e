#include "waveqed/single_photon.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "waveqed/primitives.hpp"

namespace waveqed {

using prim::ephi1;

SingleQubitAmplitudes qubit_amplitudes(double k, const SystemParams& p) {
  SingleQubitAmplitudes a;
  auto one = [&](int beta, Complex& t, Complex& r) {
    if (p.gamma(beta) == 0.0) {
      t = 1.0;
      r = 0.0;
      return;
    }
    const Complex den = k - p.omega_tilde(beta);
    t = (k - p.omega(beta)) / den;
    r = -2.0 * kI * p.gamma(beta) / den;
  };
  one(1, a.t1, a.r1);
  one(2, a.t2, a.r2);
  return a;
}

MFactor m_factor(Complex e, const SystemParams& p) {
  MFactor out;
  const Complex d1 = e - p.omega_tilde(1);
  const Complex d2 = e - p.omega_tilde(2);
  const double scale = std::abs(e) + std::abs(p.omega_tilde(1)) +
                       std::abs(p.omega_tilde(2)) + 1.0;
  out.near_pole = std::abs(d1) < 1e-12 * scale || std::abs(d2) < 1e-12 * scale;
  const double g12 = std::sqrt(p.gamma1 * p.gamma2);
  if (g12 == 0.0) {
    out.value = 0.0;
    return out;
  }
  out.value = -2.0 * kI * g12 * std::exp(kI * (e * p.separation + p.phase)) /
              std::sqrt(d1 * d2);
  return out;
}

Mat2 green_one_excitation(Complex e, const SystemParams& p) {
  const Complex d1 = e - p.omega_tilde(1);
  const Complex d2 = e - p.omega_tilde(2);
  const double g12 = std::sqrt(p.gamma1 * p.gamma2);
  const Complex mtil =
      -2.0 * kI * g12 * std::exp(kI * (e * p.separation + p.phase));
  const Complex den = d1 * d2 - mtil * mtil;
  const double scale =
      std::abs(d1 * d2) + std::abs(mtil * mtil) + std::norm(e) + 1.0;
  if (std::abs(den) < 1e-14 * scale) {
    std::ostringstream os;
    os << "green_one_excitation: singular denominator at E = (" << e.real()
       << ", " << e.imag() << ")";
    throw std::domain_error(os.str());
  }
  return Mat2{d2 / den, mtil / den, mtil / den, d1 / den};
}

Mat2 green_divided_difference(double e, double x, const SystemParams& p) {
  const SystemParams& q = p;
  const double g12sq = 4.0 * q.gamma1 * q.gamma2;
  const Complex d1 = e - q.omega_tilde(1);
  const Complex d2 = e - q.omega_tilde(2);
  const Complex ph = std::exp(kI * (e * q.separation + q.phase));
  const Complex mtil = -2.0 * kI * std::sqrt(q.gamma1 * q.gamma2) * ph;
  const Complex expo2 = ph * ph;  // e^{2i(eR+phi)}

  // Numerators N(e) and denominator D(e) of M, plus their exact divided
  // differences dN = [N(e+x)-N(e)]/x, dD likewise; the e^{i x R} increments
  // go through the stable (e^w-1)/w form.
  const Complex D = d1 * d2 + g12sq * expo2;
  const Complex ephx = ephi1(kI * x * q.separation);       // (e^{ixR}-1)/(ixR)
  const Complex ephx2 = ephi1(2.0 * kI * x * q.separation);
  const Complex dMtil = mtil * kI * q.separation * ephx;
  const Complex dD = (d1 + d2 + x) + g12sq * expo2 * 2.0 * kI * q.separation * ephx2;

  const Complex d1x = d1 + x;
  const Complex d2x = d2 + x;
  const Complex phx = std::exp(kI * (x * q.separation));
  const Complex Dx = d1x * d2x + g12sq * expo2 * phx * phx;
  const Complex mtilx = mtil * phx;

  const double scale = std::abs(d1 * d2) + g12sq + 1.0;
  if (std::abs(D) < 1e-14 * scale || std::abs(Dx) < 1e-14 * scale)
    throw std::domain_error("green_divided_difference: singular denominator");

  // [N/D](e+x) - [N/D](e) = (dN*D - N*dD) * x / (D(e+x) D(e))
  const Complex inv = 1.0 / (Dx * D);
  Mat2 out;
  out.a00 = (1.0 * D - d2 * dD) * inv;   // N00 = d2, dN00 = 1
  out.a11 = (1.0 * D - d1 * dD) * inv;
  out.a01 = (dMtil * D - mtil * dD) * inv;
  out.a10 = out.a01;
  return out;
}

MbarDiagonal mbar_diagonal(double k1, double e, const SystemParams& p) {
  MbarDiagonal out;
  const Complex ph = std::exp(kI * (k1 * p.separation + p.phase));
  const Complex dp = e - k1 - p.omega_tilde(1);
  const Complex dm = e - k1 - p.omega_tilde(2);
  const double scale = std::abs(e - k1) + 1.0;
  out.near_pole = std::abs(dp) < 1e-12 * scale || std::abs(dm) < 1e-12 * scale;
  out.plus = ph / dp;
  out.minus = ph / dm;
  return out;
}

S1Matrix s1_matrix(double k, const SystemParams& p) {
  const auto a = qubit_amplitudes(k, p);
  const Complex ph = std::exp(kI * (k * p.separation + p.phase));
  const Complex den = 1.0 - a.r1 * a.r2 * ph * ph;
  S1Matrix s;
  s.s11 = s.s22 = a.t1 * a.t2 / den;
  // Off-diagonals from the M-matrix contraction: near-qubit reflection plus
  // the multiply-reflected remainder. The cross term carries one interqubit
  // phase, r1 r2 e^{i(kR+phi)}, which keeps S unitary at every k.
  s.s12 = (a.r1 / ph + a.r2 * ph + 2.0 * a.r1 * a.r2 * ph) / den;
  s.s21 = (a.r2 / ph + a.r1 * ph + 2.0 * a.r1 * a.r2 * ph) / den;
  return s;
}

double s1_unitarity_defect(const S1Matrix& s) {
  // S^dag S entries
  const Complex u00 = std::conj(s.s11) * s.s11 + std::conj(s.s21) * s.s21;
  const Complex u01 = std::conj(s.s11) * s.s12 + std::conj(s.s21) * s.s22;
  const Complex u10 = std::conj(s.s12) * s.s11 + std::conj(s.s22) * s.s21;
  const Complex u11 = std::conj(s.s12) * s.s12 + std::conj(s.s22) * s.s22;
  double d = std::abs(u00 - 1.0);
  d = std::max(d, std::abs(u11 - 1.0));
  d = std::max(d, std::abs(u01));
  d = std::max(d, std::abs(u10));
  return d;
}

std::array<Complex, 2> ket_vertex(int channel, double k,
                                  const SystemParams& p) {
  const double ca = sign_factor(channel);
  const double arg = 0.5 * ca * (k * p.separation + p.phase);
  return {p.g(1) * std::exp(kI * arg), p.g(2) * std::exp(-kI * arg)};
}

std::array<Complex, 2> bra_vertex(int channel, double k,
                                  const SystemParams& p) {
  const double ca = sign_factor(channel);
  const double arg = 0.5 * ca * (k * p.separation + p.phase);
  return {p.g(1) * std::exp(-kI * arg), p.g(2) * std::exp(kI * arg)};
}

}  // namespace waveqed
