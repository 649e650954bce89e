#ifndef WAVEQED_OBSERVABLES_HPP
#define WAVEQED_OBSERVABLES_HPP

#include <memory>
#include <vector>

#include "waveqed/scattering.hpp"

namespace waveqed {

/// Shell grid used by the correlation pipeline: a dense core in
/// kappa' = Delta'/2 over [-extent, extent] plus coarse wings out to
/// wing_factor * extent. The inelastic amplitude only decays like 1/kappa'^2,
/// so the wings carry a percent-level share of the pair amplitude; they are
/// smooth and need far fewer points than the core. A Hann taper rolls off
/// the outermost taper_fraction of the window before the Fourier transform.
struct G2Settings {
  double kappa_extent = 0.0;   // 0: default 40 * max(Gamma1, Gamma2)
  std::size_t n_kappa = 8001;  // dense core
  double wing_factor = 16.0;   // 1: no wings
  std::size_t n_wing = 3000;   // per side
  double taper_fraction = 0.1;
};

/// Second-order correlation of the scattered two-photon state for one
/// ordered detector pair: channel out1 at x, out2 at x + tau. The detector
/// position x drops out on shell (only the co-moving separation tau enters).
struct CorrelationSeries {
  std::vector<double> tau_grid;
  std::vector<double> same;   // autocorrelation, LL = (2,2)
  std::vector<double> cross;  // cross-correlation, L then R = (2,1)
  Mode mode = Mode::exact;
  bool aliasing_warning = false;  // max tau beyond pi / grid spacing
};

/// g2 for one ordered output pair on the given tau grid.
std::vector<double> g2_pair(const TwoPhotonResult& r, int out1, int out2,
                            const std::vector<double>& tau_grid,
                            double taper_fraction = 0.1);

/// Convenience: same-direction and cross-direction curves in one pass.
CorrelationSeries g2(const std::vector<double>& tau_grid, int in1, int in2,
                     double e, double delta_in, const SystemParams& p,
                     Mode mode, const G2Settings& s = {});

/// Markov solver context: the five NCA substitutions applied; every
/// downstream operation runs unchanged on it.
std::unique_ptr<SolverContext> markov_mode_objects(double e,
                                                   const SystemParams& p);

/// g2_exact(tau) / g2_markov(tau) at a single delay for one output pair,
/// both modes on identical grids so the normalization cancels.
double markov_ratio(double tau, int out1, int out2, int in1, int in2,
                    double e, double delta_in, const SystemParams& p,
                    const G2Settings& s = {});

/// Indices where the one-sided slopes of y(tau) jump by more than
/// `threshold` times the local slope-noise floor and more than
/// `floor_frac` of the curve's largest slope step (significance gate
/// against ripples on a near-zero background); adjacent hits merged.
/// Slope discontinuities of the pair amplitude at even multiples of R sit
/// at zeros of phi, so run the detector on sqrt(g2) to see them.
std::vector<std::size_t> detect_kinks(const std::vector<double>& tau,
                                      const std::vector<double>& y,
                                      double threshold = 10.0,
                                      double floor_frac = 0.03);

EnergyShell g2_shell(double e, double delta_in, const SystemParams& p,
                     const G2Settings& s);

}  // namespace waveqed

#endif
