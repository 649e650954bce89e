#include "waveqed/scattering.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "waveqed/parallel.hpp"

namespace waveqed {

SolverContext::SolverContext(double e, const SystemParams& p, Mode mode)
    : e_(e), params_(p), mode_(mode) {
  p.validate();
  if (mode == Mode::exact) {
    components_ = std::make_unique<ComponentContext>(e, p);
    if (components_->degenerate_averaged())
      std::fprintf(stderr,
                   "warning: degenerate vertex roots at E = %.17g; "
                   "averaging over E +- 1e-7 Gamma\n",
                   e);
    ffuncs_ = std::make_unique<EffectiveVertexFunctions>(e, p);
    g_pp_ = sigma_plus_plus(e, p).g_pp;
  } else {
    // NCA: bare vertices, free doubly-excited propagator
    const RootData r = compute_roots(e, p);
    g_pp_ = 1.0 / (2.0 * r.lambda);
    bare_f_[0] = {p.g(2), 0.0};  // f^{1+} -> g2, f^{1-} -> 0
    bare_f_[1] = {0.0, p.g(1)};  // f^{2+} -> 0,  f^{2-} -> g1
  }
}

SolverContext::~SolverContext() = default;

SolverContext::QubitBlocks SolverContext::qubit_blocks(double kp,
                                                       double k) const {
  QubitBlocks q;
  if (mode_ == Mode::markov) {
    for (int bp = 0; bp < 2; ++bp)
      for (int b = 0; b < 2; ++b)
        q.blk[bp][b] = g_pp_ * Mat2::outer(bare_f_[1 - bp], bare_f_[1 - b]);
    return q;
  }
  const VertexComponents v = components_->all_components(kp, k);
  q.blk[0][0] = Mat2{v.t12p, v.t22m, v.t22p, v.t32m};
  q.blk[0][1] = Mat2{v.t1p, v.t31m, v.t11p, v.t1m};
  q.blk[1][0] = Mat2{v.t2p, v.t12m, v.t32p, v.t2m};
  q.blk[1][1] = Mat2{v.t31p, v.t21m, v.t21p, v.t11m};
  const auto& f = *ffuncs_;
  for (int bp = 0; bp < 2; ++bp)
    for (int b = 0; b < 2; ++b)
      q.blk[bp][b] = q.blk[bp][b] + g_pp_ * Mat2::outer(f.fvec(2 - bp, kp),
                                                        f.fvec(2 - b, k));
  return q;
}

Mat2 SolverContext::contract(const QubitBlocks& q, int channel_out,
                             int channel_in, double kp, double k) const {
  Mat2 w;
  for (int bp = 1; bp <= 2; ++bp) {
    const Complex ph_out = std::conj(basis_phase(bp, channel_out, kp, params_));
    for (int b = 1; b <= 2; ++b)
      w = w + ph_out * basis_phase(b, channel_in, k, params_) *
                  q.blk[bp - 1][b - 1];
  }
  return w;
}

Mat2 SolverContext::w_regular(int channel_out, int channel_in, double kp,
                              double k) const {
  return contract(qubit_blocks(kp, k), channel_out, channel_in, kp, k);
}

Complex SolverContext::inelastic_amplitude(int out1, int out2,
                                           double delta_out, int in1, int in2,
                                           double delta_in) const {
  const SystemParams& p = params_;
  if (p.gamma1 == 0.0 && p.gamma2 == 0.0) return {};  // free field
  const double kq1 = 0.5 * (e_ + delta_out), kq2 = 0.5 * (e_ - delta_out);
  const double kt1 = 0.5 * (e_ + delta_in), kt2 = 0.5 * (e_ - delta_in);
  const double x = 0.5 * (delta_out + delta_in);  // k_q1 - k_t2
  const double y = 0.5 * (delta_out - delta_in);  // k_q1 - k_t1

  const auto uq1 = bra_vertex(out1, kq1, p), uq2 = bra_vertex(out2, kq2, p);
  const auto ut1 = ket_vertex(in1, kt1, p), ut2 = ket_vertex(in2, kt2, p);
  const Mat2 mq1 = green_one_excitation(kq1, p);
  const Mat2 mq2 = green_one_excitation(kq2, p);
  const Mat2 mt1 = green_one_excitation(kt1, p);
  const Mat2 mt2 = green_one_excitation(kt2, p);

  // Four-fold bosonic symmetrization of the regular vertex part. The W
  // argument pairs repeat when delta_in = 0, so the qubit-basis blocks are
  // reused across the channel contractions.
  const QubitBlocks q2t2 = qubit_blocks(kq2, kt2);
  const QubitBlocks q2t1 =
      delta_in == 0.0 ? q2t2 : qubit_blocks(kq2, kt1);
  const QubitBlocks q1t2 = qubit_blocks(kq1, kt2);
  const QubitBlocks q1t1 =
      delta_in == 0.0 ? q1t2 : qubit_blocks(kq1, kt1);

  Complex t{};
  t += sandwich(uq1, mq1 * contract(q2t2, out2, in2, kq2, kt2) * mt1, ut1);
  t += sandwich(uq1, mq1 * contract(q2t1, out2, in1, kq2, kt1) * mt2, ut2);
  t += sandwich(uq2, mq2 * contract(q1t2, out1, in2, kq1, kt2) * mt1, ut1);
  t += sandwich(uq2, mq2 * contract(q1t1, out1, in1, kq1, kt1) * mt2, ut2);

  // Principal-value content of the direct w^(i) poles. The symmetrized sum
  // pairs each pole with its mirror at the opposite sign; the difference
  // quotient [M(k+x)-M(k)]/x stays finite through the elastic points.
  const Mat2 ddx_t2 = green_divided_difference(kt2, x, p);
  const Mat2 ddx_q2 = green_divided_difference(kq2, x, p);
  t += sandwich(uq1, ddx_t2, ut2) * sandwich(uq2, mt1, ut1) +
       sandwich(uq1, mt2, ut2) * sandwich(uq2, ddx_q2, ut1);

  const Mat2 ddy_t1 = green_divided_difference(kt1, y, p);
  const Mat2 ddy_q2 = green_divided_difference(kq2, y, p);
  t += sandwich(uq1, ddy_t1, ut1) * sandwich(uq2, mt2, ut2) +
       sandwich(uq1, mt1, ut1) * sandwich(uq2, ddy_q2, ut2);
  return t;
}

ElasticCoefficients elastic_part(int out1, int out2, int in1, int in2,
                                 double k1, double k2, const SystemParams& p) {
  const S1Matrix s1 = s1_matrix(k1, p);
  const S1Matrix s2 = k2 == k1 ? s1 : s1_matrix(k2, p);
  ElasticCoefficients e;
  e.direct = s1(out1, in1) * s2(out2, in2);
  e.swapped = s2(out1, in2) * s1(out2, in1);
  return e;
}

TwoPhotonResult compute_two_photon(const EnergyShell& shell, int in1, int in2,
                                   const SystemParams& p, Mode mode) {
  shell.validate();
  TwoPhotonResult r;
  r.shell = shell;
  r.in1 = in1;
  r.in2 = in2;
  r.mode = mode;
  const double k1 = shell.k_in(1), k2 = shell.k_in(2);
  for (int o1 = 1; o1 <= 2; ++o1)
    for (int o2 = 1; o2 <= 2; ++o2) {
      r.elastic[o1 - 1][o2 - 1] = elastic_part(o1, o2, in1, in2, k1, k2, p);
      r.inelastic[o1 - 1][o2 - 1].resize(shell.delta_out_grid.size());
    }

  const SolverContext ctx(shell.total_energy, p, mode);
  parallel_for(shell.delta_out_grid.size(), [&](std::size_t i) {
    const double dp = shell.delta_out_grid[i];
    for (int o1 = 1; o1 <= 2; ++o1)
      for (int o2 = 1; o2 <= 2; ++o2)
        r.inelastic[o1 - 1][o2 - 1][i] =
            ctx.inelastic_amplitude(o1, o2, dp, in1, in2, shell.delta_in);
  });
  return r;
}

Complex t2_amplitude(int out1, double kp1, int out2, double kp2, int in1,
                     double k1, int in2, double k2, const SystemParams& p,
                     Mode mode) {
  const double e = k1 + k2;
  const double scale = std::abs(k1) + std::abs(k2) + std::abs(kp1) +
                       std::abs(kp2) + 1.0;
  if (std::abs(kp1 + kp2 - e) > 1e-12 * scale)
    throw std::invalid_argument("t2_amplitude: momenta are off shell");
  const SolverContext ctx(e, p, mode);
  return ctx.inelastic_amplitude(out1, out2, kp1 - kp2, in1, in2, k1 - k2);
}

DensityCurve density_curves(const TwoPhotonResult& r) {
  DensityCurve d;
  d.delta_out_grid = r.shell.delta_out_grid;
  const std::size_t n = d.delta_out_grid.size();
  d.same.resize(n);
  d.opposite.resize(n);
  const double pi2 = kPi * kPi;
  for (std::size_t i = 0; i < n; ++i) {
    d.same[i] = pi2 * (std::norm(r.inelastic[0][0][i]) +
                       std::norm(r.inelastic[1][1][i]));
    d.opposite[i] = pi2 * (std::norm(r.inelastic[0][1][i]) +
                           std::norm(r.inelastic[1][0][i]));
  }
  return d;
}

}  // namespace waveqed
