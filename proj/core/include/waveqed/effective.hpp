#ifndef WAVEQED_EFFECTIVE_HPP
#define WAVEQED_EFFECTIVE_HPP

#include <array>

#include "waveqed/params.hpp"
#include "waveqed/vertex.hpp"

namespace waveqed {

/// Effective one-photon vertex functions f_k^{1+-}, f_k^{2+-} at fixed E.
/// f^{2+} and f^{1+} are the closed-form finite sums over C_jl; the minus
/// variants follow from the parameter exchange, f^{1-} = I[f^{2+}] and
/// f^{2-} = I[f^{1+}]. Not real-valued: Vbar^dag != V^dag.
class EffectiveVertexFunctions {
 public:
  EffectiveVertexFunctions(double e, const SystemParams& p);

  Complex f1p(double k) const;
  Complex f1m(double k) const;
  Complex f2p(double k) const;
  Complex f2m(double k) const;

  /// (f^{gamma+}(k), f^{gamma-}(k)) for qubit index gamma in {1,2}.
  std::array<Complex, 2> fvec(int gamma, double k) const;

 private:
  struct Half {  // one parameter orientation
    double e, r;
    double pref1 = 0.0;          // sqrt(Gamma_2/pi)
    Complex pref2{};             // e^{-i(ER/2+phi)} / (2 sqrt(pi Gamma_2))
    std::array<Complex, 4> s1{}, s2{};  // column-contracted C sums
    std::array<Complex, 4> roots{};
    bool zero = true;

    Half() = default;
    Half(double e_, const SystemParams& p);
    Complex eval_f2p(double k) const;
    Complex eval_f1p(double k) const;
  };
  Half direct_, swapped_;
};

/// sigma_++(E) and g_++(E) = 1/(E - O~1 - O~2 - sigma_++).
struct DoublyExcitedSector {
  Complex sigma_pp{};
  Complex g_pp{};
  bool singular = false;  // g_++ denominator below tolerance
};

DoublyExcitedSector sigma_plus_plus(double e, const SystemParams& p);

/// sigma_++ analytically continued off the real energy axis (pole searches).
Complex sigma_pp_continued(Complex e, const SystemParams& p);

/// Reducible vertex W^(r) in the qubit basis: per (beta', beta) a rank-one
/// 2x2 block g_++ * fvec(other(beta'), k') (x) fvec(other(beta), k), with the
/// "+" component on the |eg> slot and "-" on |ge>.
struct ReducibleTable {
  std::array<std::array<Mat2, 2>, 2> block{};  // [beta'-1][beta-1]
};

ReducibleTable w_reducible(double kp, double k, double e,
                           const SystemParams& p);

/// Basis phase t_{rs} = e^{i c_alpha c_beta (kR+phi)/2}.
Complex basis_phase(int beta, int channel, double k, const SystemParams& p);

/// Full two-photon vertex W_{s's}(E) = sum_{b'b} W_{r'r} t*_{r's'} t_{rs} in
/// the photon basis, as a 2x2 one-excitation operator. The direct-pole part
/// is kept symbolic: W ~ regular + pole_coeff / (E - k' - k + i eta).
struct PhotonBasisVertex {
  Mat2 regular{};
  Mat2 pole_coeff{};
};

PhotonBasisVertex full_w_photon_basis(int channel_out, int channel_in,
                                      double kp, double k, double e,
                                      const SystemParams& p);

}  // namespace waveqed

#endif
