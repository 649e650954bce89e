#include "waveqed/observables.hpp"

#include <algorithm>
#include <cmath>

#include "waveqed/parallel.hpp"

namespace waveqed {

EnergyShell g2_shell(double e, double delta_in, const SystemParams& p,
                     const G2Settings& s) {
  EnergyShell shell;
  shell.total_energy = e;
  shell.delta_in = delta_in;
  double extent = s.kappa_extent;
  if (extent <= 0.0) extent = 40.0 * std::max(p.gamma1, p.gamma2);
  if (extent <= 0.0) extent = 40.0;
  const std::size_t n = std::max<std::size_t>(s.n_kappa, 3) | 1;  // odd
  std::vector<double> kappa;
  kappa.reserve(n + 2 * s.n_wing);
  if (s.wing_factor > 1.0 && s.n_wing > 0) {
    const double far = s.wing_factor * extent;
    for (std::size_t i = 0; i < s.n_wing; ++i)
      kappa.push_back(-far + (far - extent) * double(i) / double(s.n_wing));
  }
  for (std::size_t i = 0; i < n; ++i)
    kappa.push_back(-extent + 2.0 * extent * double(i) / double(n - 1));
  if (s.wing_factor > 1.0 && s.n_wing > 0) {
    const double far = s.wing_factor * extent;
    for (std::size_t i = 1; i <= s.n_wing; ++i)
      kappa.push_back(extent + (far - extent) * double(i) / double(s.n_wing));
  }
  shell.delta_out_grid.resize(kappa.size());
  for (std::size_t i = 0; i < kappa.size(); ++i)
    shell.delta_out_grid[i] = 2.0 * kappa[i];
  return shell;
}

namespace {

// position-based Hann roll-off over the outer `frac` of the window
std::vector<double> taper_weights(const std::vector<double>& grid,
                                  double frac) {
  const std::size_t n = grid.size();
  std::vector<double> w(n, 1.0);
  const double hi = std::max(std::abs(grid.front()), std::abs(grid.back()));
  const double start = (1.0 - frac) * hi;
  if (hi <= 0.0 || frac <= 0.0) return w;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(grid[i]);
    if (a > start) {
      const double t = (a - start) / (hi - start);  // 1 at the boundary
      w[i] = 0.5 * (1.0 + std::cos(kPi * std::min(t, 1.0)));
    }
  }
  return w;
}

}  // namespace

std::vector<double> g2_pair(const TwoPhotonResult& r, int out1, int out2,
                            const std::vector<double>& tau_grid,
                            double taper_fraction) {
  const auto& grid = r.shell.delta_out_grid;
  const std::size_t n = grid.size();
  const auto& t = r.inelastic[out1 - 1][out2 - 1];
  const double kappa0 = 0.5 * r.shell.delta_in;

  // trapezoid weights in kappa' = Delta'/2, with the Hann edge roll-off
  std::vector<double> w = taper_weights(grid, taper_fraction);
  for (std::size_t i = 0; i < n; ++i) {
    double h = 0.0;
    if (i > 0) h += 0.25 * (grid[i] - grid[i - 1]);
    if (i + 1 < n) h += 0.25 * (grid[i + 1] - grid[i]);
    w[i] *= h;  // dkappa' = dDelta'/2
  }

  const ElasticCoefficients el = r.elastic[out1 - 1][out2 - 1];
  // Uncorrelated reference: inelastic deleted, elastic moduli. If this pair
  // has no elastic background, fall back to the input pair's reference.
  double ad = std::abs(el.direct), as = std::abs(el.swapped);
  if (ad + as < 1e-12) {
    const ElasticCoefficients ref = r.elastic[r.in1 - 1][r.in2 - 1];
    ad = std::abs(ref.direct);
    as = std::abs(ref.swapped);
    if (ad + as < 1e-12) ad = 1.0;
  }

  std::vector<double> out(tau_grid.size());
  parallel_for(tau_grid.size(), [&](std::size_t it) {
    const double tau = tau_grid[it];
    Complex integral{};
    for (std::size_t i = 0; i < n; ++i) {
      const double kappa = 0.5 * grid[i];
      integral += w[i] * std::exp(-kI * kappa * tau) * t[i];
    }
    const Complex phi = el.direct * std::exp(-kI * kappa0 * tau) +
                        el.swapped * std::exp(kI * kappa0 * tau) -
                        2.0 * kPi * kI * integral;
    const double norm_ref =
        std::norm(ad * std::exp(-kI * kappa0 * tau) +
                  as * std::exp(kI * kappa0 * tau));
    out[it] = std::norm(phi) / (norm_ref > 0.0 ? norm_ref : 1.0);
  });
  return out;
}

CorrelationSeries g2(const std::vector<double>& tau_grid, int in1, int in2,
                     double e, double delta_in, const SystemParams& p,
                     Mode mode, const G2Settings& s) {
  const EnergyShell shell = g2_shell(e, delta_in, p, s);
  const TwoPhotonResult r = compute_two_photon(shell, in1, in2, p, mode);
  CorrelationSeries out;
  out.tau_grid = tau_grid;
  out.mode = mode;
  out.same = g2_pair(r, 2, 2, tau_grid, s.taper_fraction);
  out.cross = g2_pair(r, 2, 1, tau_grid, s.taper_fraction);
  double spacing = 1e300;  // densest (core) spacing rules the alias bound
  for (std::size_t i = 1; i < shell.delta_out_grid.size(); ++i)
    spacing = std::min(
        spacing, 0.5 * (shell.delta_out_grid[i] - shell.delta_out_grid[i - 1]));
  const double tmax =
      tau_grid.empty() ? 0.0 : *std::max_element(tau_grid.begin(), tau_grid.end());
  out.aliasing_warning = tmax > kPi / spacing;
  return out;
}

std::unique_ptr<SolverContext> markov_mode_objects(double e,
                                                   const SystemParams& p) {
  return std::make_unique<SolverContext>(e, p, Mode::markov);
}

double markov_ratio(double tau, int out1, int out2, int in1, int in2,
                    double e, double delta_in, const SystemParams& p,
                    const G2Settings& s) {
  const EnergyShell shell = g2_shell(e, delta_in, p, s);
  const TwoPhotonResult exact = compute_two_photon(shell, in1, in2, p, Mode::exact);
  const TwoPhotonResult markov =
      compute_two_photon(shell, in1, in2, p, Mode::markov);
  const std::vector<double> taus{tau};
  const double num = g2_pair(exact, out1, out2, taus, s.taper_fraction)[0];
  const double den = g2_pair(markov, out1, out2, taus, s.taper_fraction)[0];
  if (std::abs(den) < 1e-14)
    throw std::domain_error("markov_ratio: markov g2 below 1e-14");
  return num / den;
}

std::vector<std::size_t> detect_kinks(const std::vector<double>& tau,
                                      const std::vector<double>& y,
                                      double threshold, double floor_frac) {
  const std::size_t n = tau.size();
  std::vector<std::size_t> hits;
  if (n < 8) return hits;
  std::vector<double> jump(n, 0.0);
  double jump_scale = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double sl = (y[i] - y[i - 1]) / (tau[i] - tau[i - 1]);
    const double sr = (y[i + 1] - y[i]) / (tau[i + 1] - tau[i]);
    jump[i] = std::abs(sr - sl);
    jump_scale = std::max(
        jump_scale, std::max(std::abs(sl), std::abs(sr)) *
                        (tau[i] - tau[i - 1]));
  }
  jump_scale /= (tau[1] - tau[0]);
  const std::size_t w = 10;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    if (jump[i] < floor_frac * jump_scale) continue;
    // local noise floor: median jump in a window, the candidate excluded
    std::vector<double> nb;
    const std::size_t lo = i > w ? i - w : 1;
    const std::size_t hi = std::min(i + w, n - 2);
    for (std::size_t j = lo; j <= hi; ++j)
      if (j + 2 < i || j > i + 2) nb.push_back(jump[j]);
    if (nb.size() < 4) continue;
    std::nth_element(nb.begin(), nb.begin() + nb.size() / 2, nb.end());
    const double noise = nb[nb.size() / 2] + 1e-300;
    if (jump[i] > threshold * noise && jump[i] >= jump[i - 1] &&
        jump[i] >= jump[i + 1])
      hits.push_back(i);
  }
  // merge hits within two grid steps, keeping the strongest
  std::vector<std::size_t> merged;
  for (std::size_t h : hits) {
    if (!merged.empty() && h - merged.back() <= 2) {
      if (jump[h] > jump[merged.back()]) merged.back() = h;
    } else {
      merged.push_back(h);
    }
  }
  return merged;
}

}  // namespace waveqed
