#ifndef WAVEQED_SCATTERING_HPP
#define WAVEQED_SCATTERING_HPP

#include <array>
#include <memory>
#include <vector>

#include "waveqed/effective.hpp"
#include "waveqed/params.hpp"
#include "waveqed/single_photon.hpp"
#include "waveqed/vertex.hpp"

namespace waveqed {

enum class Mode { exact, markov };

/// Per-energy solver context: caches the vertex components, effective vertex
/// functions and g_++ for one (E, params, mode). In markov mode the vertex
/// corrections are dropped: W^(i) -> w^(i), f -> bare, g_++ -> 1/(2 lambda).
/// Immutable after construction; safe to share across threads.
class SolverContext {
 public:
  SolverContext(double e, const SystemParams& p, Mode mode);
  ~SolverContext();

  double energy() const { return e_; }
  const SystemParams& params() const { return params_; }
  Mode mode() const { return mode_; }

  /// Regular part of the full vertex W_{s's} in the photon basis at
  /// (k', k); the direct w^(i) poles are accounted for separately by the
  /// on-shell principal-value algebra in inelastic_amplitude.
  Mat2 w_regular(int channel_out, int channel_in, double kp, double k) const;

  /// Fully symmetrized regular inelastic on-shell amplitude
  /// t(out1 k'1, out2 k'2 <- in1 k1, in2 k2) with k'1+k'2 = k1+k2 = E.
  Complex inelastic_amplitude(int out1, int out2, double delta_out, int in1,
                              int in2, double delta_in) const;

 private:
  struct QubitBlocks {  // W blocks in the qubit basis at one momentum pair
    std::array<std::array<Mat2, 2>, 2> blk{};
  };
  QubitBlocks qubit_blocks(double kp, double k) const;
  Mat2 contract(const QubitBlocks& q, int channel_out, int channel_in,
                double kp, double k) const;

  double e_;
  SystemParams params_;
  Mode mode_;
  std::unique_ptr<ComponentContext> components_;       // exact mode only
  std::unique_ptr<EffectiveVertexFunctions> ffuncs_;   // exact mode only
  Complex g_pp_{};
  std::array<std::array<Complex, 2>, 2> bare_f_{};     // markov vertex table
};

/// Elastic coefficients of the two momentum-conserving kinematic structures,
/// as products of single-photon S-matrix elements (S^(2)_el = S1 S1 / 2):
///   direct  ~ delta(k'1-k1) delta(k'2-k2): S_{o1,i1}(k1) S_{o2,i2}(k2)
///   swapped ~ delta(k'1-k2) delta(k'2-k1): S_{o1,i2}(k2) S_{o2,i1}(k1)
struct ElasticCoefficients {
  Complex direct{}, swapped{};
};

ElasticCoefficients elastic_part(int out1, int out2, int in1, int in2,
                                 double k1, double k2, const SystemParams& p);

/// On-shell two-photon outgoing state over a Delta' grid: singular (elastic)
/// coefficients plus the regular inelastic amplitude per ordered output
/// channel pair. Stored amplitudes satisfy k'1 + k'2 = E by construction.
struct TwoPhotonResult {
  EnergyShell shell;
  int in1 = 1, in2 = 2;
  Mode mode = Mode::exact;
  std::array<std::array<ElasticCoefficients, 2>, 2> elastic{};
  std::array<std::array<std::vector<Complex>, 2>, 2> inelastic{};  // [o1][o2]
};

TwoPhotonResult compute_two_photon(const EnergyShell& shell, int in1, int in2,
                                   const SystemParams& p,
                                   Mode mode = Mode::exact);

/// Symmetrized regular inelastic T amplitude for explicit in/out labels.
/// Throws std::invalid_argument off the energy shell.
Complex t2_amplitude(int out1, double kp1, int out2, double kp2, int in1,
                     double k1, int in2, double k2, const SystemParams& p,
                     Mode mode = Mode::exact);

/// Momentum-exchange probability densities P(Delta') = pi^2 |t|^2, split
/// into same-direction (LL+RR) and opposite-direction (LR+RL) curves. The
/// discretized optical-theorem budget reads
///   elastic + interference + h_kappa * sum_pairs int P dDelta' = 1
/// with h_kappa the kappa-grid spacing of the run.
struct DensityCurve {
  std::vector<double> delta_out_grid;
  std::vector<double> same, opposite;
};

DensityCurve density_curves(const TwoPhotonResult& r);

}  // namespace waveqed

#endif
