#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "waveqed/config.hpp"
#include "waveqed/observables.hpp"
#include "waveqed/oracle.hpp"
#include "waveqed/single_photon.hpp"
#include "waveqed/vertex.hpp"

namespace waveqed {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * double(i) / double(n - 1);
  return v;
}

double omega_scale(const SystemParams& p) {
  const double o = std::max(std::abs(p.omega1), std::abs(p.omega2));
  return o > 0.0 ? o : 1.0;
}

int run_s1(const RunConfig& c) {
  std::ostringstream csv;
  csv << "k,re_s11,im_s11,re_s12,im_s12,re_s21,im_s21,re_s22,im_s22,"
         "unitarity_residual\n";
  for (double k : linspace(c.k_min, c.k_max, c.n_k)) {
    const S1Matrix s = s1_matrix(k, c.params);
    csv << fmt(k) << ',' << fmt(s.s11.real()) << ',' << fmt(s.s11.imag())
        << ',' << fmt(s.s12.real()) << ',' << fmt(s.s12.imag()) << ','
        << fmt(s.s21.real()) << ',' << fmt(s.s21.imag()) << ','
        << fmt(s.s22.real()) << ',' << fmt(s.s22.imag()) << ','
        << fmt(s1_unitarity_defect(s)) << '\n';
  }
  write_file(c.output_path, csv.str());
  return 0;
}

int run_roots(const RunConfig& c) {
  std::ostringstream csv;
  csv << "e,re_lambda,im_lambda,re_b,im_b,re_nu,im_nu";
  for (int j = 1; j <= 4; ++j) csv << ",re_p" << j << ",im_p" << j;
  csv << ",max_residual\n";
  const auto grid = linspace(c.e_min, c.e_max, c.n_e);
  for (const RootData& r : compute_roots_tracked(grid, c.params)) {
    csv << fmt(r.total_energy) << ',' << fmt(r.lambda.real()) << ','
        << fmt(r.lambda.imag()) << ',' << fmt(r.asym.real()) << ','
        << fmt(r.asym.imag()) << ',' << fmt(r.nu.real()) << ','
        << fmt(r.nu.imag());
    for (const auto& p : r.roots)
      csv << ',' << fmt(p.real()) << ',' << fmt(p.imag());
    csv << ',' << fmt(r.max_residual) << '\n';
  }
  write_file(c.output_path, csv.str());
  return 0;
}

EnergyShell density_shell(const RunConfig& c) {
  EnergyShell shell;
  shell.total_energy = c.energy;
  shell.delta_in = c.delta_in;
  const double dmax =
      c.delta_max > 0.0 ? c.delta_max : 12.0 * omega_scale(c.params);
  shell.delta_out_grid = linspace(-dmax, dmax, c.n_delta);
  return shell;
}

int run_density(const RunConfig& c) {
  const Mode mode = c.mode == RunMode::markov ? Mode::markov : Mode::exact;
  const TwoPhotonResult r =
      compute_two_photon(density_shell(c), 1, 2, c.params, mode);
  const DensityCurve d = density_curves(r);
  std::ostringstream csv;
  csv << "delta_out,p_same,p_opposite\n";
  for (std::size_t i = 0; i < d.delta_out_grid.size(); ++i)
    csv << fmt(d.delta_out_grid[i]) << ',' << fmt(d.same[i]) << ','
        << fmt(d.opposite[i]) << '\n';
  write_file(c.output_path, csv.str());
  return 0;
}

std::vector<double> tau_grid_of(const RunConfig& c) {
  const double tmax = c.tau_max > 0.0
                          ? c.tau_max
                          : 6.0 * std::max(c.params.separation, 1.0);
  return linspace(0.0, tmax, c.n_tau);
}

int run_g2(const RunConfig& c) {
  G2Settings s;
  s.kappa_extent = c.kappa_extent;
  s.n_kappa = static_cast<std::size_t>(c.n_kappa);
  const auto taus = tau_grid_of(c);
  std::ostringstream csv;
  const bool both = c.mode == RunMode::both;
  CorrelationSeries main = g2(taus, 1, 2, c.energy, c.delta_in, c.params,
                              c.mode == RunMode::markov ? Mode::markov
                                                        : Mode::exact,
                              s);
  if (main.aliasing_warning)
    std::cerr << "warning: tau grid exceeds pi / (kappa spacing); "
                 "Fourier transform may alias\n";
  if (both) {
    const CorrelationSeries mk =
        g2(taus, 1, 2, c.energy, c.delta_in, c.params, Mode::markov, s);
    csv << "tau,g2_same,g2_cross,g2_same_markov,g2_cross_markov\n";
    for (std::size_t i = 0; i < taus.size(); ++i)
      csv << fmt(taus[i]) << ',' << fmt(main.same[i]) << ','
          << fmt(main.cross[i]) << ',' << fmt(mk.same[i]) << ','
          << fmt(mk.cross[i]) << '\n';
  } else {
    csv << "tau,g2_same,g2_cross\n";
    for (std::size_t i = 0; i < taus.size(); ++i)
      csv << fmt(taus[i]) << ',' << fmt(main.same[i]) << ','
          << fmt(main.cross[i]) << '\n';
  }
  write_file(c.output_path, csv.str());
  return 0;
}

int run_ratio(const RunConfig& c) {
  G2Settings s;
  s.kappa_extent = c.kappa_extent;
  s.n_kappa = static_cast<std::size_t>(c.n_kappa);
  const double tau = c.tau >= 0.0 ? c.tau : c.params.separation;
  std::ostringstream csv;
  csv << "tau,ratio\n";
  csv << fmt(tau) << ','
      << fmt(markov_ratio(tau, 2, 1, 1, 2, c.energy, c.delta_in, c.params, s))
      << '\n';
  write_file(c.output_path, csv.str());
  return 0;
}

int run_verify(const RunConfig& c) {
  const auto checks = oracle::run_verification(c.params, c.energy);
  std::ostringstream report;
  bool all_pass = true;
  for (const auto& chk : checks) {
    report << "CHECK " << chk.name << ' ' << (chk.pass ? "pass" : "fail")
           << ' ' << fmt(chk.residual) << '\n';
    all_pass = all_pass && chk.pass;
  }
  std::cout << report.str();
  write_file(c.output_path, report.str());
  return all_pass ? 0 : 2;
}

}  // namespace

int run(const RunConfig& c) {
  switch (c.experiment) {
    case Experiment::s1: return run_s1(c);
    case Experiment::roots: return run_roots(c);
    case Experiment::density: return run_density(c);
    case Experiment::g2: return run_g2(c);
    case Experiment::ratio: return run_ratio(c);
    case Experiment::verify: return run_verify(c);
  }
  return 1;
}

}  // namespace waveqed
