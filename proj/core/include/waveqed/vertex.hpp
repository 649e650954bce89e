#ifndef WAVEQED_VERTEX_HPP
#define WAVEQED_VERTEX_HPP

#include <array>
#include <memory>
#include <vector>

#include "waveqed/params.hpp"

namespace waveqed {

/// Quartic-root data of the characteristic equation
///   p^4 - 2(lambda^2+b^2) p^2 + (lambda^2-b^2)^2 + 4 lambda^2 nu^2 = 0
/// at total energy E, with
///   lambda = (E - O~1 - O~2)/2,  b = (O~1 - O~2)/2,
///   nu = 4i G1 G2 e^{i(ER+2phi)} / (E - O~1 - O~2).
/// Roots ordered p[0] = p1, p[1] = p2 = -p1, p[2] = p3, p[3] = p4 = -p3 with
/// p1,3 = sqrt(lambda^2 + b^2 +- 2 lambda s), s = sqrt(b^2 - nu^2).
/// inner_sqrt keeps the branch of s consistent with the labeling; sweeps that
/// relabel roots for continuity must refresh it as (p1^2 - p3^2)/(4 lambda).
struct RootData {
  double total_energy = 0.0;
  Complex lambda{}, asym{}, nu{};
  Complex inner_sqrt{};
  std::array<Complex, 4> roots{};
  double max_residual = 0.0;     // relative quartic residual over the roots
  bool degenerate = false;       // b^2 ~ nu^2: p1 ~ +-p3 neighborhoods
};

RootData compute_roots(double e, const SystemParams& p);

/// Relative residual of a candidate root in the quartic at this RootData.
double quartic_residual(const RootData& r, Complex p);

/// Roots along an E sweep, relabeled for continuity (nearest-neighbor
/// continuation over the eight label/sign choices, inner_sqrt refreshed).
std::vector<RootData> compute_roots_tracked(const std::vector<double>& e_grid,
                                            const SystemParams& p);

/// Coefficients C_jl of the ansatz
///   F(x',x) = Theta(x'-x) sum_jl C_jl e^{i p_j x' + i p_l x}
///           + Theta(x-x') sum_jl C_jl e^{i p_j x + i p_l x'},
/// plus the auxiliaries Z, [p] and {p}. All sixteen entries populated; the
/// pairs C13=C31, C14=C41, C23=C32, C24=C42 hold by construction while C12,
/// C21 and C34, C43 encode the derivative jumps across x'=x.
struct CoefficientSet {
  std::array<std::array<Complex, 4>, 4> c{};
  Complex z{};
  std::array<Complex, 4> bracket{};  // [p_j]
  std::array<Complex, 4> brace{};    // {p_j}
  double separation = 0.0;
};

/// Throws std::domain_error on singular [p1], [p3] or Z denominator.
CoefficientSet compute_coefficients(const RootData& r, double separation);

/// Closed-form kernel F(x',x) on [0,R]^2.
Complex kernel_f(double xp, double x, const CoefficientSet& c,
                 const RootData& r);

/// The sixteen scalar components T^{(a) beta +-}(k',k) at fixed E; a = 0
/// denotes the unsuperscripted family. Only the regular parts are stored:
/// the direct poles of the a=1 family, Gamma_1/pi / (E-k'-k+i eta) in t12p
/// and sqrt(Gamma_1 Gamma_2)/pi / (E-k'-k+i eta) in t11p (and their images
/// under I), are realized downstream in the elastic/inelastic split.
struct VertexComponents {
  Complex t1p{}, t2p{}, t1m{}, t2m{};          // a = 0
  Complex t11p{}, t12p{}, t11m{}, t12m{};      // a = 1
  Complex t21p{}, t22p{}, t21m{}, t22m{};      // a = 2
  Complex t31p{}, t32p{}, t31m{}, t32m{};      // a = 3
};

/// Evaluator of the six directly computed base components for one parameter
/// set at fixed E; the remaining ten follow by the transposition/exchange
/// relations via ComponentContext.
class BaseComponents {
 public:
  BaseComponents(double e, const SystemParams& p);

  const RootData& roots() const { return roots_; }
  const CoefficientSet& coeffs() const { return coeffs_; }
  const SystemParams& params() const { return params_; }

  // Regular (double-integral) parts; the a=1 members exclude their poles.
  Complex t12p_reg(double kp, double k) const;
  Complex t11p_reg(double kp, double k) const;
  Complex t22p(double kp, double k) const;
  Complex t32p(double kp, double k) const;
  Complex t02p(double kp, double k) const;
  Complex t31p(double kp, double k) const;

 private:
  double e_;
  SystemParams params_;
  RootData roots_;
  CoefficientSet coeffs_;
  bool zero_ = false;  // Gamma1*Gamma2 == 0: every regular part vanishes
  Complex pref12_, pref11_, pref22_, pref32_, pref02_, pref31_;
  std::array<Complex, 4> w22_{}, w32_{}, w02_{}, eipr_{};
};

/// Amplitude with its on-shell singular term kept symbolic:
/// value ~ regular + pole_coefficient / (E - k' - k + i eta). The eta limit
/// is realized only inside the elastic/inelastic split downstream.
struct TaggedAmplitude {
  Complex regular{};
  Complex pole_coefficient{};
};

/// T^{(1)2+}: the base component solving the two-photon integral equation.
TaggedAmplitude t_1_2plus(double kp, double k, const BaseComponents& bc);

/// The five convolution components built on top of T^{(1)2+}.
struct ConvolutionComponents {
  Complex t22p{}, t32p{}, t02p{};  // T^{(2)2+}, T^{(3)2+}, T^{2+}
  TaggedAmplitude t11p{};          // T^{(1)1+} carries its own direct pole
  Complex t31p{};                  // T^{(3)1+}
};

ConvolutionComponents t_convolutions(double kp, double k,
                                     const BaseComponents& bc);

/// Direct + parameter-swapped base components at fixed E, with the symmetry
/// completion to all sixteen components. Degenerate-root neighborhoods are
/// evaluated at E +- 1e-7 Gamma_max and averaged (flag reported).
class ComponentContext {
 public:
  ComponentContext(double e, const SystemParams& p);

  VertexComponents all_components(double kp, double k) const;

  const BaseComponents& direct() const { return *direct_; }
  const BaseComponents& swapped() const { return *swapped_; }
  bool degenerate_averaged() const { return averaged_; }
  double energy() const { return e_; }
  const SystemParams& params() const { return params_; }

 private:
  VertexComponents eval_at(const BaseComponents& d, const BaseComponents& s,
                           double kp, double k) const;

  double e_;
  SystemParams params_;
  bool averaged_ = false;
  std::unique_ptr<BaseComponents> direct_, swapped_;
  std::unique_ptr<BaseComponents> direct_lo_, swapped_lo_;  // E - eps twin
};

}  // namespace waveqed

#endif
