#ifndef WAVEQED_SINGLE_PHOTON_HPP
#define WAVEQED_SINGLE_PHOTON_HPP

#include <array>
#include <utility>

#include "waveqed/params.hpp"

namespace waveqed {

/// Transmission/reflection amplitudes of each qubit alone:
/// t = (k - Omega)/(k - Omega~), r = -2i*Gamma/(k - Omega~).
struct SingleQubitAmplitudes {
  Complex t1, r1, t2, r2;
};

SingleQubitAmplitudes qubit_amplitudes(double k, const SystemParams& p);

/// m(E) = -2i sqrt(G1 G2) e^{i(ER+phi)} / sqrt((E-O~1)(E-O~2)),
/// principal branch of the product under the square root. Diagnostic only:
/// production code uses the branch-free green_one_excitation.
struct MFactor {
  Complex value;
  bool near_pole = false;  // |E - Omega~_beta| below tolerance
};
MFactor m_factor(Complex e, const SystemParams& p);

/// One-excitation Green's function projection M(E) as a 2x2 matrix in the
/// basis {|eg>, |ge>}:
///   M = [ (E-O~2)   mtil    ] / D,   mtil = -2i sqrt(G1 G2) e^{i(ER+phi)},
///       [  mtil    (E-O~1)  ]        D = (E-O~1)(E-O~2) + 4 G1 G2 e^{2i(ER+phi)}
/// Throws std::domain_error when D is singular at the given E.
Mat2 green_one_excitation(Complex e, const SystemParams& p);

/// Exact divided difference [M(e+x) - M(e)] / x, finite for all x including
/// x = 0 (analytic derivative). Used by the on-shell principal-value algebra.
Mat2 green_divided_difference(double e, double x, const SystemParams& p);

/// Mbar_k^{+/-} = e^{i(kR+phi)} / (E - k - Omega~_{1,2}).
struct MbarDiagonal {
  Complex plus, minus;
  bool near_pole = false;  // real pole, only possible at zero coupling
};
MbarDiagonal mbar_diagonal(double k1, double e, const SystemParams& p);

/// 2x2 single-photon scattering matrix over channels (1,2) = (R,L):
///   S11 = S22 = t1 t2 / (1 - r1 r2 e^{2i(kR+phi)})
///   S12/21 = [r^{(1/2)} e^{-i(kR+phi)} + r^{(2/1)} e^{+i(kR+phi)}
///             + 2 r1 r2 e^{2i(kR+phi)}] / (1 - r1 r2 e^{2i(kR+phi)})
struct S1Matrix {
  Complex s11, s12, s21, s22;
  Complex operator()(int out, int in) const {
    return out == 1 ? (in == 1 ? s11 : s12) : (in == 1 ? s21 : s22);
  }
};
S1Matrix s1_matrix(double k, const SystemParams& p);

/// || S^dag S - 1 ||_max, the unitarity defect at momentum k.
double s1_unitarity_defect(const S1Matrix& s);

/// Bare vertex contraction v_s^dag |gg> as a 2-vector over the excited qubit,
/// u_beta = g_beta e^{+i c_alpha c_beta (kR+phi)/2}; bra_vertex is <gg| v_s.
std::array<Complex, 2> ket_vertex(int channel, double k, const SystemParams& p);
std::array<Complex, 2> bra_vertex(int channel, double k, const SystemParams& p);

}  // namespace waveqed

#endif
