#include "waveqed/oracle.hpp"

#include <quadmath.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "waveqed/effective.hpp"
#include "waveqed/primitives.hpp"
#include "waveqed/quadrature.hpp"
#include "waveqed/single_photon.hpp"

namespace waveqed::oracle {

using prim::ephi1;

namespace {

// ---- f^(4) analytic nesting -------------------------------------------

// f^{+-}(z) on [0,R] as used inside the triple convolution
Complex f_plus(double z, double r, double theta, Complex lam, Complex b,
               double g1) {
  if (z < 0.0 || z > r) return 0.0;
  return 2.0 * g1 * std::exp(kI * theta) * std::exp(kI * (lam - b) * (r - z));
}
Complex f_minus(double z, double r, double theta, Complex lam, Complex b,
                double g2) {
  if (z < 0.0 || z > r) return 0.0;
  return 2.0 * g2 * std::exp(kI * theta) * std::exp(kI * (lam + b) * (r - z));
}

// int_{lo}^{hi} c e^{G t} dt
Complex seg_exp(Complex c, Complex g, double lo, double hi) {
  return c * std::exp(g * lo) * (hi - lo) * ephi1(g * (hi - lo));
}

}  // namespace

Complex kernel_f4(double xp, double x, const SystemParams& p, double e) {
  if (p.gamma1 * p.gamma2 == 0.0) return 0.0;
  const double r = p.separation;
  const RootData rd = compute_roots(e, p);
  const Complex lam = rd.lambda, b = rd.asym;
  const double theta = 0.5 * e * r + p.phase;

  // For fixed (x',x) the x1 and x3 integrals factor:
  //   f4 = C int_0^R dx2 e^{-2i(lam+b)x2} Q(min(R-x',R-x2)) Q(min(R-x,R-x2))
  // with Q(L) = int_0^L e^{-2i lam t} dt, and the x2 line splits at x', x.
  const Complex c0 = 16.0 * p.gamma1 * p.gamma1 * p.gamma2 * p.gamma2 *
                     std::exp(4.0 * kI * theta) *
                     std::exp(kI * (lam - b) * (2.0 * r - xp - x)) *
                     std::exp(2.0 * kI * (lam + b) * r);
  auto q_of = [&](double len) {
    return len * ephi1(-2.0 * kI * lam * len);
  };
  const Complex gb = -2.0 * kI * (lam + b);  // e^{gb x2}
  const double m1 = std::min(xp, x), m2 = std::max(xp, x);

  if (std::abs(2.0 * lam) * r < 1e-3) {
    // near-degenerate exponents: integrate the reduced x2 line numerically
    const auto line = [&](double x2) {
      return std::exp(gb * x2) * q_of(std::min(r - xp, r - x2)) *
             q_of(std::min(r - x, r - x2));
    };
    Complex s{};
    s += quad::integrate(line, 0.0, m1, 1e-13);
    s += quad::integrate(line, m1, m2, 1e-13);
    s += quad::integrate(line, m2, r, 1e-13);
    return c0 * s;
  }

  // Q(R-x2) = qa + qb e^{2i lam x2}
  const Complex qa = 1.0 / (2.0 * kI * lam);
  const Complex qb = -std::exp(-2.0 * kI * lam * r) / (2.0 * kI * lam);
  const Complex two_il = 2.0 * kI * lam;
  // the factor attached to x' is constant for x2 <= x', variable beyond
  struct Lin {   // a + b e^{2i lam x2}
    Complex a, b;
  };
  auto factor = [&](double boundary, double seg_lo) {
    return seg_lo >= boundary ? Lin{qa, qb} : Lin{q_of(r - boundary), 0.0};
  };
  Complex total{};
  const double edges[4] = {0.0, m1, m2, r};
  for (int s = 0; s < 3; ++s) {
    const double lo = edges[s], hi = edges[s + 1];
    if (hi <= lo) continue;
    const Lin f1 = factor(xp, lo);
    const Lin f2 = factor(x, lo);
    total += seg_exp(f1.a * f2.a, gb, lo, hi);
    total += seg_exp(f1.a * f2.b + f1.b * f2.a, gb + two_il, lo, hi);
    total += seg_exp(f1.b * f2.b, gb + 2.0 * two_il, lo, hi);
  }
  return c0 * total;
}

Complex kernel_f4_quadrature(double xp, double x, const SystemParams& p,
                             double e, double abs_tol) {
  const double r = p.separation;
  const RootData rd = compute_roots(e, p);
  const Complex lam = rd.lambda, b = rd.asym;
  const double theta = 0.5 * e * r + p.phase;
  const double g1 = p.gamma1, g2 = p.gamma2;

  // integration limits carry the Theta cutoffs exactly; the remaining
  // interior kinks (min switches at x2 = x, x1 = r - x) are split so each
  // panel sees a smooth integrand
  auto split_integrate = [](const quad::Integrand& f, double a, double b2,
                            double cut, double tol) {
    if (cut > a && cut < b2)
      return quad::integrate(f, a, cut, 0.5 * tol) +
             quad::integrate(f, cut, b2, 0.5 * tol);
    return quad::integrate(f, a, b2, tol);
  };

  const auto inner2 = [&](double x1, double x2) {
    const auto deepest = [&](double x3) {
      return f_minus(x2 + x3, r, theta, lam, b, g2) *
             f_plus(x3 + x, r, theta, lam, b, g1);
    };
    const double hi3 = std::min(r - x2, r - x);
    if (hi3 <= 0.0) return Complex{};
    return f_plus(xp + x1, r, theta, lam, b, g1) *
           f_minus(x1 + x2, r, theta, lam, b, g2) *
           quad::integrate(deepest, 0.0, hi3, abs_tol * 2e-3 / (r * r));
  };
  const auto outer = [&](double x1) {
    const double hi2 = r - x1;
    if (hi2 <= 0.0) return Complex{};
    return split_integrate([&](double x2) { return inner2(x1, x2); }, 0.0, hi2,
                           x, abs_tol * 2e-2 / r);
  };
  const double hi1 = r - xp;
  if (hi1 <= 0.0) return Complex{};
  return split_integrate(outer, 0.0, hi1, r - x, abs_tol);
}

// ---- Nystrom ------------------------------------------------------------

NystromSolution nystrom_solve(const SystemParams& p, double e, int order) {
  if (order < 16)
    throw std::invalid_argument("nystrom_solve: order must be >= 16");
  NystromSolution sol;
  sol.params = &p;
  sol.energy = e;
  quad::gauss_legendre(order, 0.0, p.separation, sol.nodes, sol.weights);

  Eigen::MatrixXcd f4(order, order), a(order, order);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j)
      f4(i, j) = kernel_f4(sol.nodes[i], sol.nodes[j], p, e);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j)
      a(i, j) = (i == j ? 1.0 : 0.0) - sol.weights[j] * f4(i, j);

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  const Eigen::MatrixXcd f = lu.solve(f4);
  const Eigen::MatrixXcd res = lu.inverse();
  // one-norm condition estimate from the explicit resolvent
  auto norm1 = [order](const Eigen::MatrixXcd& m) {
    double best = 0.0;
    for (int j = 0; j < order; ++j) {
      double col = 0.0;
      for (int i = 0; i < order; ++i) col += std::abs(m(i, j));
      best = std::max(best, col);
    }
    return best;
  };
  sol.condition_estimate = norm1(a) * norm1(res);
  if (sol.condition_estimate > 1e12)
    throw std::runtime_error("nystrom_solve: ill-conditioned system");
  sol.f_grid.assign(order, std::vector<Complex>(order));
  sol.resolvent.assign(order, std::vector<Complex>(order));
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      sol.f_grid[i][j] = f(i, j);
      sol.resolvent[i][j] = res(i, j);
    }
  return sol;
}

std::vector<std::vector<Complex>> nystrom_on_grid(
    const NystromSolution& sol, const std::vector<double>& xs) {
  const int n = static_cast<int>(sol.nodes.size());
  const int m = static_cast<int>(xs.size());
  // g(:, x) = resolvent * f4(nodes, x), then
  // F(xp, x) = f4(xp, x) + sum_j w_j f4(xp, node_j) g_j(x)
  std::vector<std::vector<Complex>> cols(m, std::vector<Complex>(n));
  for (int c = 0; c < m; ++c) {
    std::vector<Complex> rhs(n);
    for (int i = 0; i < n; ++i)
      rhs[i] = kernel_f4(sol.nodes[i], xs[c], *sol.params, sol.energy);
    for (int i = 0; i < n; ++i) {
      Complex acc{};
      for (int j = 0; j < n; ++j) acc += sol.resolvent[i][j] * rhs[j];
      cols[c][i] = acc;
    }
  }
  std::vector<std::vector<Complex>> out(m, std::vector<Complex>(m));
  for (int rI = 0; rI < m; ++rI) {
    std::vector<Complex> row(n);
    for (int j = 0; j < n; ++j)
      row[j] = sol.weights[j] *
               kernel_f4(xs[rI], sol.nodes[j], *sol.params, sol.energy);
    for (int c = 0; c < m; ++c) {
      Complex val = kernel_f4(xs[rI], xs[c], *sol.params, sol.energy);
      for (int j = 0; j < n; ++j) val += row[j] * cols[c][j];
      out[rI][c] = val;
    }
  }
  return out;
}

Complex NystromSolution::value(double xp, double x) const {
  const int n = static_cast<int>(nodes.size());
  std::vector<Complex> col(n), g(n, Complex{});
  for (int i = 0; i < n; ++i) col[i] = kernel_f4(nodes[i], x, *params, energy);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i] += resolvent[i][j] * col[j];
  Complex val = kernel_f4(xp, x, *params, energy);
  for (int j = 0; j < n; ++j)
    val += weights[j] * kernel_f4(xp, nodes[j], *params, energy) * g[j];
  return val;
}

// ---- boundary residuals --------------------------------------------------

double BoundaryResiduals::max() const {
  return std::max(std::max(value_at_r, slope_at_0),
                  std::max(curvature_at_r, jump_source));
}

BoundaryResiduals verify_f_boundary(const RootData& r,
                                    const CoefficientSet& c) {
  BoundaryResiduals out;
  const double sep = c.separation;
  const Complex lam = r.lambda, b = r.asym, nu = r.nu;
  const double xs[5] = {0.05 * sep, 0.25 * sep, 0.5 * sep, 0.75 * sep,
                        0.95 * sep};

  for (double x : xs) {
    Complex v1{}, v2{}, v3{};
    double s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (int j = 0; j < 4; ++j) {
      const Complex pj = r.roots[j];
      const Complex ejr = std::exp(kI * pj * sep);
      for (int l = 0; l < 4; ++l) {
        const Complex pl = r.roots[l];
        // F(R,x) = 0 on the x' > x branch
        const Complex t1 = c.c[j][l] * ejr * std::exp(kI * pl * x);
        v1 += t1;
        s1 += std::abs(t1);
        // dF/dx'(0,x) + i(lam-b) F(0,x) = 0 on the x > x' branch
        const Complex base = c.c[j][l] * std::exp(kI * pj * x);
        const Complex t2 = base * (kI * pl + kI * (lam - b));
        v2 += t2;
        s2 += std::abs(base) * (std::abs(pl) + std::abs(lam - b));
        // d2F/dx'2(R,x) - 2ib dF/dx'(R,x) = 0 on the x' > x branch
        const Complex t3 =
            t1 * ((kI * pj) * (kI * pj) - 2.0 * kI * b * (kI * pj));
        v3 += t3;
        s3 += std::abs(t1) * (std::norm(pj) + 2.0 * std::abs(b) * std::abs(pj));
      }
    }
    out.value_at_r = std::max(out.value_at_r, std::abs(v1) / (s1 + 1e-300));
    out.slope_at_0 = std::max(out.slope_at_0, std::abs(v2) / (s2 + 1e-300));
    out.curvature_at_r =
        std::max(out.curvature_at_r, std::abs(v3) / (s3 + 1e-300));
  }

  // third-derivative source at (0+, 0)
  Complex v4 = 4.0 * lam * lam * nu * nu;
  double s4 = std::abs(v4);
  for (int j = 0; j < 4; ++j)
    for (int l = 0; l < 4; ++l) {
      const Complex pj = r.roots[j];
      const Complex d3 = (kI * pj) * (kI * pj) * (kI * pj);
      const Complex d2 = (kI * pj) * (kI * pj);
      const Complex t = c.c[j][l] * (d3 + kI * (lam - b) * d2);
      v4 += t;
      s4 += std::abs(c.c[j][l]) *
            (std::abs(d3) + std::abs(lam - b) * std::abs(d2));
    }
  out.jump_source = std::abs(v4) / (s4 + 1e-300);
  return out;
}

// ---- interior ODE residual in quadruple precision -------------------------

namespace {

struct QC {
  __float128 re, im;
  QC(double r = 0.0, double i = 0.0) : re(r), im(i) {}
  QC(__float128 r, __float128 i) : re(r), im(i) {}
  QC operator+(const QC& o) const { return {re + o.re, im + o.im}; }
  QC operator-(const QC& o) const { return {re - o.re, im - o.im}; }
  QC operator*(const QC& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  QC operator*(__float128 s) const { return {re * s, im * s}; }
  double abs2d() const {
    return static_cast<double>(sqrtq(re * re + im * im));
  }
};

QC qc_from(Complex z) { return {z.real(), z.imag()}; }

// e^{i p z} for complex p, real z
QC qc_exp_ipz(Complex p, __float128 z) {
  const __float128 mag = expq(-(__float128)p.imag() * z);
  const __float128 ph = (__float128)p.real() * z;
  return {mag * cosq(ph), mag * sinq(ph)};
}

QC f_quad(const RootData& r, const CoefficientSet& c, __float128 xp,
          __float128 x) {
  const __float128 hi = xp >= x ? xp : x;
  const __float128 lo = xp >= x ? x : xp;
  QC f;
  for (int j = 0; j < 4; ++j) {
    const QC ej = qc_exp_ipz(r.roots[j], hi);
    for (int l = 0; l < 4; ++l)
      f = f + qc_from(c.c[j][l]) * ej * qc_exp_ipz(r.roots[l], lo);
  }
  return f;
}

}  // namespace

double ode_fd_residual(const RootData& r, const CoefficientSet& c, double xp,
                       double x) {
  const double sep = c.separation;
  const __float128 h = (__float128)sep / 2000.0;
  const __float128 qxp = xp, qx = x;
  QC f[5];
  double fmax = 0.0;
  for (int m = -2; m <= 2; ++m) {
    f[m + 2] = f_quad(r, c, qxp + h * (__float128)m, qx);
    fmax = std::max(fmax, f[m + 2].abs2d());
  }
  if (fmax == 0.0) return 0.0;
  const __float128 h2 = h * h, h4 = h2 * h2;
  const QC d4 = (f[0] - f[1] * (__float128)4.0 + f[2] * (__float128)6.0 -
                 f[3] * (__float128)4.0 + f[4]) *
                ((__float128)1.0 / h4);
  const QC d2 = (f[1] - f[2] * (__float128)2.0 + f[3]) * ((__float128)1.0 / h2);
  const Complex lam = r.lambda, b = r.asym, nu = r.nu;
  const Complex c2 = 2.0 * (lam * lam + b * b);
  const Complex c0 = (lam * lam - b * b) * (lam * lam - b * b) +
                     4.0 * lam * lam * nu * nu;
  const QC val = d4 + qc_from(c2) * d2 + qc_from(c0) * f[2];

  double pmax = 0.0;
  for (const auto& root : r.roots) pmax = std::max(pmax, std::abs(root));
  const double opscale =
      pmax * pmax * pmax * pmax + std::abs(c2) * pmax * pmax + std::abs(c0);
  return val.abs2d() / (opscale * fmax + 1e-300);
}

// ---- unitarity budget ------------------------------------------------------

UnitarityBudget unitarity_budget(const TwoPhotonResult& r,
                                 const SystemParams& p) {
  UnitarityBudget out;
  const auto& grid = r.shell.delta_out_grid;
  if (grid.size() < 3)
    throw std::invalid_argument("unitarity_budget: grid too small");
  const double h_kappa = 0.5 * (grid[1] - grid[0]);

  // elastic part: |S1 S1|^2 summed over pairings (coincident when Delta = 0)
  double elastic = 0.0;
  for (int o1 = 0; o1 < 2; ++o1)
    for (int o2 = 0; o2 < 2; ++o2) {
      const auto& e = r.elastic[o1][o2];
      elastic += r.shell.delta_in == 0.0
                     ? 0.5 * std::norm(e.direct + e.swapped)
                     : 0.5 * (std::norm(e.direct) + std::norm(e.swapped));
    }
  out.elastic = elastic;

  // interference with the inelastic amplitude on the elastic support
  const SolverContext ctx(r.shell.total_energy, p, r.mode);
  Complex x{};
  for (int o1 = 1; o1 <= 2; ++o1)
    for (int o2 = 1; o2 <= 2; ++o2) {
      const Complex t_el = ctx.inelastic_amplitude(
          o1, o2, r.shell.delta_in, r.in1, r.in2, r.shell.delta_in);
      x += r.elastic[o1 - 1][o2 - 1].direct * std::conj(t_el);
    }
  out.interference = -4.0 * kPi * h_kappa * x.imag();

  // integrated inelastic probability (trapezoid in kappa')
  double integral = 0.0;
  for (int o1 = 0; o1 < 2; ++o1)
    for (int o2 = 0; o2 < 2; ++o2) {
      const auto& t = r.inelastic[o1][o2];
      for (std::size_t i = 0; i < t.size(); ++i) {
        const double w = (i == 0 || i + 1 == t.size()) ? 0.5 : 1.0;
        integral += w * std::norm(t[i]);
      }
    }
  out.inelastic = 2.0 * kPi * kPi * h_kappa * h_kappa * integral;

  out.total = out.elastic + out.interference + out.inelastic;
  out.deviation = std::abs(out.total - 1.0);
  return out;
}

// ---- momentum-integral oracles ---------------------------------------------

namespace {

struct MomentumWindow {
  double center, half_width, tail_step;
};

MomentumWindow make_window(double e, const SystemParams& p) {
  const double gmax = std::max(p.gamma1, p.gamma2);
  const double w = 40.0 * std::max(gmax, 1e-3) +
                   5.0 * (std::abs(p.omega1) + std::abs(p.omega2)) +
                   std::abs(e);
  // full oscillation period of e^{ikR} factors, for Longman segmentation
  const double step =
      2.0 * kPi / std::max(p.separation, 1e-3 / std::max(gmax, 1e-3));
  return {0.5 * e, w, step};
}

// central window + Euler-paired oscillatory tails around the window center
Complex full_line(const quad::Integrand& f, const MomentumWindow& w,
                  double abs_tol) {
  const Complex central =
      quad::integrate(f, w.center - w.half_width, w.center + w.half_width,
                      abs_tol);
  const quad::Integrand paired = [&](double s) {
    return f(w.center + s) + f(w.center - s);
  };
  const Complex tails =
      quad::oscillatory_tail(paired, w.half_width, +1.0, w.tail_step, 64);
  return central + tails;
}

}  // namespace

Complex f2p_oracle(double e, double k, const SystemParams& p) {
  const BaseComponents bc(e, p);
  const double c2 = 1.0 / std::sqrt(kPi * p.gamma2);
  const double c1 = 1.0 / std::sqrt(kPi * p.gamma1);
  const quad::Integrand f = [&](double kp) {
    return kI * (c2 * bc.t02p(kp, k) + c1 * bc.t22p(kp, k));
  };
  return full_line(f, make_window(e, p), 1e-10);
}

Complex f1p_oracle(double e, double k, const SystemParams& p) {
  const BaseComponents bc(e, p);
  const double c2 = 1.0 / std::sqrt(kPi * p.gamma2);
  const double c1 = 1.0 / std::sqrt(kPi * p.gamma1);
  const double x0 = e - k;  // real pole of the bare w^(i) inside T^{(1)1+}
  const Complex pole_c =
      kI * c1 * std::sqrt(p.gamma1 * p.gamma2) / kPi;
  const quad::Integrand regular = [&](double kp) {
    return kI * (c2 * bc.t31p(kp, k) + c1 * bc.t11p_reg(kp, k));
  };
  MomentumWindow w = make_window(e, p);
  w.half_width = std::max(w.half_width, 2.0 * std::abs(x0 - w.center) + 1.0);
  const double a = w.center - w.half_width, b = w.center + w.half_width;
  // analytic window integral of pole_c / (x0 - k' + i eta)
  const Complex pole_window =
      pole_c * (std::log(std::abs((x0 - a) / (x0 - b))) - kI * kPi);
  const Complex central = quad::integrate(regular, a, b, 1e-10) + pole_window;
  const quad::Integrand paired = [&](double s) {
    const double kp1 = w.center + s, kp2 = w.center - s;
    return regular(kp1) + regular(kp2) + pole_c / (x0 - kp1) +
           pole_c / (x0 - kp2);
  };
  return central +
         quad::oscillatory_tail(paired, w.half_width, +1.0, w.tail_step, 64);
}

Complex sigma_pp_oracle(double e, const SystemParams& p) {
  const EffectiveVertexFunctions f(e, p);
  const double c1 = std::sqrt(p.gamma1 / kPi);
  const double c2 = std::sqrt(p.gamma2 / kPi);
  const quad::Integrand integrand = [&](double k) {
    const MbarDiagonal m = mbar_diagonal(k, e, p);
    return c1 * f.f1m(k) * m.minus + c2 * f.f2p(k) * m.plus;
  };
  return full_line(integrand, make_window(e, p), 1e-10);
}

Complex t22p_convolution_oracle(double kp, double k, double e,
                                const SystemParams& p) {
  const BaseComponents bc(e, p);
  const double pref = std::sqrt(p.gamma1 * p.gamma2) / kPi;
  const double x1 = e - kp;  // pole of the explicit convolution kernel
  const double x2 = e - k;   // pole inside T^{(1)2+}
  const double g1pi = p.gamma1 / kPi;
  auto mbar_plus = [&](double k1) { return mbar_diagonal(k1, e, p).plus; };
  auto t12p_full_reg = [&](double k1) { return bc.t12p_reg(k1, k); };

  // residue-style coefficients of the two real poles
  const Complex c_outer =
      pref * mbar_plus(x1) * (t12p_full_reg(x1) + g1pi / (x2 - x1));
  const Complex c_inner = pref * mbar_plus(x2) * g1pi / (x1 - x2);

  const quad::Integrand regular = [&](double k1) {
    Complex val = pref * mbar_plus(k1) *
                  (t12p_full_reg(k1) + g1pi / (e - k1 - k)) / (e - kp - k1);
    val -= c_outer / (x1 - k1) + c_inner / (x2 - k1);
    if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
      return Complex{};
    return val;
  };
  // rebuild the full integrand = regular + the two pole functions
  MomentumWindow w = make_window(e, p);
  w.half_width = std::max({w.half_width, 2.0 * std::abs(x1 - w.center) + 1.0,
                           2.0 * std::abs(x2 - w.center) + 1.0});
  const double a = w.center - w.half_width, b = w.center + w.half_width;
  auto pole_int = [&](Complex c, double x0) {
    return c * (std::log(std::abs((x0 - a) / (x0 - b))) - kI * kPi);
  };
  const Complex central = quad::integrate(regular, a, b, 1e-10) +
                          pole_int(c_outer, x1) + pole_int(c_inner, x2);
  const quad::Integrand paired = [&](double s) {
    Complex v{};
    for (double k1 : {w.center + s, w.center - s})
      v += regular(k1) + c_outer / (x1 - k1) + c_inner / (x2 - k1);
    return v;
  };
  return central +
         quad::oscillatory_tail(paired, w.half_width, +1.0, w.tail_step, 64);
}

// ---- independent single-scatterer amplitude --------------------------------

Complex single_qubit_t2(int out1, double kp1, int out2, double kp2, int in1,
                        double k1, int in2, double k2, double omega,
                        double gamma, double separation, double phase) {
  const double e = k1 + k2;
  const Complex ot{omega, -2.0 * gamma};
  const double arg =
      0.5 * (sign_factor(in1) * (k1 * separation + phase) +
             sign_factor(in2) * (k2 * separation + phase) -
             sign_factor(out1) * (kp1 * separation + phase) -
             sign_factor(out2) * (kp2 * separation + phase));
  const Complex phi = std::exp(kI * arg);
  const double g4 = gamma * gamma / (kPi * kPi);
  return 2.0 * g4 * phi * (2.0 * ot - e) /
         ((kp1 - ot) * (kp2 - ot) * (k1 - ot) * (k2 - ot));
}

// ---- verification suite ------------------------------------------------------

namespace {

void add_check(std::vector<CheckResult>& v, const std::string& name,
               double residual, double threshold) {
  v.push_back({name, residual < threshold, residual});
}

double rel_diff(Complex a, Complex b) {
  return std::abs(a - b) / (std::max(std::abs(a), std::abs(b)) + 1e-300);
}

// 2D quadrature of one double-integral component representation
Complex component_by_quadrature(
    double kp, double k, double e, double sep,
    const std::function<Complex(double, double)>& bracket, Complex pref,
    const std::function<double(double)>& kink) {
  const Complex ap = 0.5 * e - kp, a = 0.5 * e - k;
  const quad::Integrand outer = [&](double xp) {
    const quad::Integrand inner = [&](double x) {
      return std::exp(kI * ap * xp) * std::exp(kI * a * x) * bracket(xp, x);
    };
    const double c = std::clamp(kink(xp), 0.0, sep);
    Complex v = quad::integrate(inner, 0.0, c, 2e-11);
    v += quad::integrate(inner, c, sep, 2e-11);
    return v;
  };
  return pref * quad::integrate(outer, 0.0, sep, 1e-10);
}

}  // namespace

std::vector<CheckResult> run_verification(const SystemParams& p, double e) {
  std::vector<CheckResult> out;
  const double r = p.separation;
  const double gmax = std::max(p.gamma1, p.gamma2);

  const RootData rd = compute_roots(e, p);
  add_check(out, "roots_residual", rd.max_residual, 1e-10);
  const CoefficientSet cs = compute_coefficients(rd, r);

  {
    const BoundaryResiduals bc = verify_f_boundary(rd, cs);
    add_check(out, "bc_value_r", bc.value_at_r, 1e-8);
    add_check(out, "bc_slope_0", bc.slope_at_0, 1e-8);
    add_check(out, "bc_curvature_r", bc.curvature_at_r, 1e-8);
    add_check(out, "bc_jump_source", bc.jump_source, 1e-8);
  }

  {
    double worst = 0.0;
    for (double frac : {0.23, 0.52, 0.81})
      worst = std::max(worst,
                       ode_fd_residual(rd, cs, frac * r, 0.37 * r));
    add_check(out, "ode_interior_fd", worst, 1e-4);
  }

  {
    // The diagonal C1 break limits plain Gauss-Legendre Nystrom to order^-4
    // convergence, so the reference solve escalates with Gamma R and is
    // interpolated onto the 64-node comparison grid.
    const double gr = gmax * r;
    const int solve_order = gr <= 2.0 ? 160 : 320;
    std::vector<double> nodes64, w64;
    quad::gauss_legendre(64, 0.0, r, nodes64, w64);
    const NystromSolution ny = nystrom_solve(p, e, solve_order);
    const auto f64 = nystrom_on_grid(ny, nodes64);
    const NystromSolution ny_lo = nystrom_solve(p, e, solve_order - 64);
    const auto f64_lo = nystrom_on_grid(ny_lo, nodes64);
    double diff = 0.0, self = 0.0;
    for (int i = 0; i < 64; ++i)
      for (int j = 0; j < 64; ++j) {
        diff = std::max(diff, std::abs(kernel_f(nodes64[i], nodes64[j], cs,
                                                rd) -
                                       f64[i][j]));
        self = std::max(self, std::abs(f64[i][j] - f64_lo[i][j]));
      }
    add_check(out, "nystrom_agreement", diff, 1e-6);
    add_check(out, "nystrom_self_consistency", self, 2e-7);
  }

  {
    // continuity of f4 across the interior fold line and a spot comparison
    // of the analytic nesting against 3D quadrature
    const double xp = 0.31 * r, x = 0.47 * r, d = 1e-7 * r;
    const Complex fa = kernel_f4(xp - d, x, p, e);
    const Complex fb = kernel_f4(xp + d, x, p, e);
    add_check(out, "f4_continuity", rel_diff(fa, fb), 1e-5);
    const Complex nested = kernel_f4(xp, x, p, e);
    const Complex brute = kernel_f4_quadrature(xp, x, p, e, 1e-10);
    add_check(out, "f4_nesting_vs_quadrature", rel_diff(nested, brute), 1e-8);
  }

  {
    // closed-form components against 2D quadrature at one momentum pair
    const BaseComponents bc(e, p);
    const double kp = 0.5 * e + 0.3 * gmax, k = 0.5 * e - 0.45 * gmax;
    const Complex lam = rd.lambda, b = rd.asym;
    const auto& c = cs.c;
    const auto& roots = rd.roots;

    const auto fval = [&](double xp, double x) {
      return kernel_f(xp, x, cs, rd);
    };
    const Complex q12 = component_by_quadrature(
        kp, k, e, r, fval, -kI * p.gamma1 / kPi,
        [&](double xp) { return xp; });
    add_check(out, "comp_t12p_quadrature", rel_diff(q12, bc.t12p_reg(kp, k)),
              1e-8);

    const auto b22 = [&](double xp, double x) {
      Complex s{};
      for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) {
          const Complex pj = roots[j], pl = roots[l];
          if (xp + x < r)
            s += c[j][l] * ((pj - b) * (pj - b) - lam * lam) *
                 (pj + lam + b) *
                 std::exp(kI * (pj * (r - xp) + pl * x));
          else
            s += c[j][l] * ((pl - b) * (pl - b) - lam * lam) *
                 (pl + lam + b) *
                 std::exp(kI * (pj * x + pl * (r - xp)));
        }
      return s;
    };
    const Complex pref22 = std::exp(-kI * (1.5 * e * r + 3.0 * p.phase)) /
                           (8.0 * kPi * p.gamma2 *
                            std::sqrt(p.gamma1 * p.gamma2));
    const Complex q22 = component_by_quadrature(
        kp, k, e, r, b22, pref22, [&](double xp) { return r - xp; });
    add_check(out, "comp_t22p_quadrature", rel_diff(q22, bc.t22p(kp, k)),
              1e-8);

    const auto b32 = [&](double xp, double x) {
      Complex s{};
      for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) {
          const Complex pj = roots[j], pl = roots[l];
          if (xp > x)
            s += c[j][l] * ((pj - b) * (pj - b) - lam * lam) *
                 std::exp(kI * (pj * xp + pl * x));
          else
            s += c[j][l] * ((pl - b) * (pl - b) - lam * lam) *
                 std::exp(kI * (pj * x + pl * xp));
        }
      return s;
    };
    const Complex pref32 = -kI * std::exp(-kI * (e * r + 2.0 * p.phase)) /
                           (4.0 * kPi * std::sqrt(p.gamma1 * p.gamma2));
    const Complex q32 = component_by_quadrature(
        kp, k, e, r, b32, pref32, [&](double xp) { return xp; });
    add_check(out, "comp_t32p_quadrature", rel_diff(q32, bc.t32p(kp, k)),
              1e-8);

    const auto b02 = [&](double xp, double x) {
      Complex s{};
      for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) {
          const Complex pj = roots[j], pl = roots[l];
          if (xp + x < r)
            s += c[j][l] * (pj + lam - b) *
                 std::exp(kI * (pj * (r - xp) + pl * x));
          else
            s += c[j][l] * (pl + lam - b) *
                 std::exp(kI * (pj * x + pl * (r - xp)));
        }
      return s;
    };
    const Complex pref02 =
        std::exp(-kI * (0.5 * e * r + p.phase)) / (2.0 * kPi);
    const Complex q02 = component_by_quadrature(
        kp, k, e, r, b02, pref02, [&](double xp) { return r - xp; });
    add_check(out, "comp_t02p_quadrature", rel_diff(q02, bc.t02p(kp, k)),
              1e-8);

    const auto b11 = [&](double xp, double x) {
      Complex s{};
      for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) {
          const Complex pj = roots[j], pl = roots[l];
          if (x > xp)
            s += c[j][l] * (pl + lam - b) / (pj - lam + b) *
                 std::exp(kI * (pj * (r - xp) + pl * (r - x)));
          else
            s += c[j][l] * (pj + lam - b) / (pl - lam + b) *
                 std::exp(kI * (pj * (r - x) + pl * (r - xp)));
        }
      return s;
    };
    const Complex pref11 = kI * std::sqrt(p.gamma1 * p.gamma2) / kPi;
    const Complex q11 = component_by_quadrature(
        kp, k, e, r, b11, pref11, [&](double xp) { return xp; });
    add_check(out, "comp_t11p_quadrature", rel_diff(q11, bc.t11p_reg(kp, k)),
              1e-8);

    const auto b31 = [&](double xp, double x) {
      Complex s{};
      for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) {
          const Complex pj = roots[j], pl = roots[l];
          const Complex w = c[j][l] * (pj + lam - b) * (pl + lam - b);
          if (x > xp)
            s += w * std::exp(kI * (pj * (r - xp) + pl * (r - x)));
          else
            s += w * std::exp(kI * (pj * (r - x) + pl * (r - xp)));
        }
      return s;
    };
    const Complex pref31 = kI * std::exp(-kI * (e * r + 2.0 * p.phase)) /
                           (4.0 * kPi * p.gamma1);
    const Complex q31 = component_by_quadrature(
        kp, k, e, r, b31, pref31, [&](double xp) { return xp; });
    add_check(out, "comp_t31p_quadrature", rel_diff(q31, bc.t31p(kp, k)),
              1e-8);

    add_check(out, "conv_t22p_momentum",
              rel_diff(t22p_convolution_oracle(kp, k, e, p), bc.t22p(kp, k)),
              1e-6);
  }

  {
    // symmetry-chain consistency: the same component reached two ways
    const ComponentContext ctx(e, p);
    const double kp = 0.5 * e + 0.7 * gmax, k = 0.5 * e - 0.2 * gmax;
    const VertexComponents v = ctx.all_components(kp, k);
    const VertexComponents vt = ctx.all_components(k, kp);
    add_check(out, "sym_t12p_transpose", rel_diff(v.t12p, vt.t12p), 1e-12);
    add_check(out, "sym_t31p_transpose", rel_diff(v.t31p, vt.t31p), 1e-12);
    // T^{(1)2-}: the I image (how it is built) against the T image
    add_check(out, "sym_t12m_it",
              rel_diff(v.t12m, ctx.direct().t11p_reg(k, kp)), 1e-12);
    // T^{(3)1-}: built as T[T^{(3)2+}], compare with I[T^{(3)2+}]
    add_check(out, "sym_t31m_it",
              rel_diff(v.t31m, ctx.swapped().t32p(kp, k)), 1e-12);
  }

  {
    const EffectiveVertexFunctions f(e, p);
    const double k = 0.5 * e + 0.4 * gmax;
    add_check(out, "f2p_momentum", rel_diff(f.f2p(k), f2p_oracle(e, k, p)),
              1e-6);
    add_check(out, "f1p_momentum", rel_diff(f.f1p(k), f1p_oracle(e, k, p)),
              1e-6);
    const DoublyExcitedSector d = sigma_plus_plus(e, p);
    add_check(out, "sigma_pp_momentum",
              rel_diff(d.sigma_pp, sigma_pp_oracle(e, p)), 1e-6);
  }

  {
    // g_++ poles on a coarse complex grid: any near-zero of the inverse
    // propagator must sit in the lower half plane
    double upper_halfplane_hits = 0.0;
    const double span = 6.0 * gmax + std::abs(p.omega1) + std::abs(p.omega2);
    for (int i = 0; i <= 48; ++i)
      for (int j = 0; j <= 24; ++j) {
        const Complex ec(-span + 2.0 * span * i / 48.0,
                         -5.0 * gmax + 5.5 * gmax * j / 24.0);
        const Complex den = ec - p.omega_tilde(1) - p.omega_tilde(2) -
                            sigma_pp_continued(ec, p);
        if (std::abs(den) < 0.1 * gmax && ec.imag() >= 0.0)
          upper_halfplane_hits += 1.0;
      }
    add_check(out, "gpp_poles_lower_halfplane", upper_halfplane_hits, 0.5);
  }

  {
    // exchange symmetry of the symmetrized inelastic amplitude
    const SolverContext ctx(e, p, Mode::exact);
    const double dp = 0.7 * gmax, d0 = 0.3 * gmax;
    const Complex t12 = ctx.inelastic_amplitude(1, 2, dp, 1, 2, d0);
    const Complex t21 = ctx.inelastic_amplitude(2, 1, -dp, 1, 2, d0);
    add_check(out, "exchange_out", rel_diff(t12, t21), 1e-12);
    const Complex s12 = ctx.inelastic_amplitude(1, 2, dp, 2, 1, -d0);
    add_check(out, "exchange_in", rel_diff(t12, s12), 1e-12);
  }

  {
    // discretized optical theorem on the default shell grid
    EnergyShell shell;
    shell.total_energy = e;
    shell.delta_in = 0.0;
    const int n = 2001;
    shell.delta_out_grid.resize(n);
    for (int i = 0; i < n; ++i)
      shell.delta_out_grid[i] = -40.0 * gmax + 80.0 * gmax * i / (n - 1.0);
    const TwoPhotonResult res = compute_two_photon(shell, 1, 2, p, Mode::exact);
    const UnitarityBudget b = unitarity_budget(res, p);
    add_check(out, "unitarity_budget", b.deviation, 1e-4);
    // negative control: dropping the interference must unbalance the budget
    // by about the inelastic weight
    const double unbalanced = std::abs(b.elastic + b.inelastic - 1.0);
    double control = 0.0;
    if (b.inelastic > 1e-6)
      control = unbalanced > 10.0 * b.deviation
                    ? std::abs(unbalanced - b.inelastic) / b.inelastic
                    : 1.0;
    add_check(out, "neg_control_interference", control, 0.1);

    const TwoPhotonResult resm =
        compute_two_photon(shell, 1, 2, p, Mode::markov);
    const UnitarityBudget bm = unitarity_budget(resm, p);
    // recorded, not asserted: the NCA need not be exactly unitary
    out.push_back({"markov_budget_info", true, bm.deviation});
  }

  return out;
}

}  // namespace waveqed::oracle
