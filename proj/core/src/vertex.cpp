#include "waveqed/vertex.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "waveqed/primitives.hpp"

namespace waveqed {

using prim::anti_corner;
using prim::corner;
using prim::triangle;

namespace {

double quartic_residual_impl(Complex lambda, Complex b, Complex nu, Complex p) {
  const Complex p2 = p * p;
  const Complex l2 = lambda * lambda, b2 = b * b;
  const Complex val =
      p2 * p2 - 2.0 * (l2 + b2) * p2 + (l2 - b2) * (l2 - b2) + 4.0 * l2 * nu * nu;
  const double scale = std::abs(p2 * p2) + 2.0 * std::abs((l2 + b2) * p2) +
                       std::abs((l2 - b2) * (l2 - b2)) +
                       4.0 * std::abs(l2 * nu * nu) + 1e-300;
  return std::abs(val) / scale;
}

}  // namespace

RootData compute_roots(double e, const SystemParams& p) {
  RootData r;
  r.total_energy = e;
  const Complex osum = p.omega_tilde(1) + p.omega_tilde(2);
  r.lambda = 0.5 * (e - osum);
  r.asym = 0.5 * (p.omega_tilde(1) - p.omega_tilde(2));
  if (p.gamma1 * p.gamma2 == 0.0) {
    r.nu = 0.0;
  } else {
    r.nu = 4.0 * kI * p.gamma1 * p.gamma2 *
           std::exp(kI * (e * p.separation + 2.0 * p.phase)) / (e - osum);
  }
  const Complex b2 = r.asym * r.asym;
  const Complex nu2 = r.nu * r.nu;
  r.inner_sqrt = std::sqrt(b2 - nu2);
  const Complex base = r.lambda * r.lambda + b2;
  const Complex p1 = std::sqrt(base + 2.0 * r.lambda * r.inner_sqrt);
  const Complex p3 = std::sqrt(base - 2.0 * r.lambda * r.inner_sqrt);
  r.roots = {p1, -p1, p3, -p3};
  r.degenerate = std::abs(b2 - nu2) < 1e-10 * (std::abs(b2) + std::abs(nu2));
  r.max_residual = 0.0;
  for (const auto& root : r.roots)
    r.max_residual = std::max(r.max_residual, quartic_residual(r, root));
  return r;
}

double quartic_residual(const RootData& r, Complex p) {
  return quartic_residual_impl(r.lambda, r.asym, r.nu, p);
}

std::vector<RootData> compute_roots_tracked(const std::vector<double>& e_grid,
                                            const SystemParams& p) {
  std::vector<RootData> out;
  out.reserve(e_grid.size());
  for (double e : e_grid) {
    RootData r = compute_roots(e, p);
    if (!out.empty()) {
      const auto& prev = out.back();
      Complex p1 = r.roots[0], p3 = r.roots[2];
      double best = 1e300;
      Complex bp1 = p1, bp3 = p3;
      for (int swap = 0; swap < 2; ++swap) {
        for (int s1 = -1; s1 <= 1; s1 += 2) {
          for (int s3 = -1; s3 <= 1; s3 += 2) {
            const Complex c1 =
                double(s1) * (swap ? p3 : p1);
            const Complex c3 = double(s3) * (swap ? p1 : p3);
            const double d = std::abs(c1 - prev.roots[0]) +
                             std::abs(c3 - prev.roots[2]);
            if (d < best) {
              best = d;
              bp1 = c1;
              bp3 = c3;
            }
          }
        }
      }
      r.roots = {bp1, -bp1, bp3, -bp3};
      // keep the coefficient formulas consistent with the relabeled roots
      if (std::abs(r.lambda) > 0.0)
        r.inner_sqrt = (bp1 * bp1 - bp3 * bp3) / (4.0 * r.lambda);
    }
    out.push_back(r);
  }
  return out;
}

CoefficientSet compute_coefficients(const RootData& r, double separation) {
  CoefficientSet cs;
  cs.separation = separation;
  const Complex lam = r.lambda, b = r.asym, nu = r.nu, s = r.inner_sqrt;

  for (int j = 0; j < 4; ++j) {
    const Complex p = r.roots[j];
    const Complex ep = std::exp(kI * p * separation);
    cs.bracket[j] = ep * (p + b - lam) + (p + lam - b) / ep;
    cs.brace[j] = ep * (p + b - lam) - (p + lam - b) / ep;
  }
  if (std::abs(nu) == 0.0) return cs;  // C_jl and Z carry nu^2 overall

  const Complex p1 = r.roots[0], p3 = r.roots[2];
  const Complex br1 = cs.bracket[0], br3 = cs.bracket[2];
  const double sc1 = std::abs(p1) + std::abs(b - lam) + std::abs(lam - b);
  const double sc3 = std::abs(p3) + std::abs(b - lam) + std::abs(lam - b);
  if (std::abs(br1) < 1e-13 * sc1 || std::abs(br3) < 1e-13 * sc3) {
    std::ostringstream os;
    os << "compute_coefficients: singular bracket [p], |[p1]| = "
       << std::abs(br1) << ", |[p3]| = " << std::abs(br3);
    throw std::domain_error(os.str());
  }

  const Complex zden = p1 * p1 - 2.0 * b * p1 * cs.brace[0] / br1 -
                       p3 * p3 + 2.0 * b * p3 * cs.brace[2] / br3;
  const double zscale = std::norm(p1) + std::norm(p3) +
                        2.0 * std::abs(b) * (std::abs(p1) + std::abs(p3));
  if (std::abs(zden) < 1e-13 * (zscale + 1e-300))
    throw std::domain_error("compute_coefficients: singular Z denominator");
  cs.z = -2.0 * kI * lam * nu * nu * b / (s * zden);

  const Complex e1r = std::exp(kI * p1 * separation);
  const Complex e3r = std::exp(kI * p3 * separation);
  const Complex jump1 = kI * lam * nu * nu / (2.0 * p1 * s);
  const Complex jump3 = kI * lam * nu * nu / (2.0 * p3 * s);
  const Complex u1 = (p1 + b - lam) / br1, v1 = (p1 + lam - b) / br1;
  const Complex u3 = (p3 + b - lam) / br3, v3 = (p3 + lam - b) / br3;
  const Complex Z = cs.z;

  auto& c = cs.c;
  c[0][0] = Z * u1 * u1 - jump1 / e1r * u1;
  c[1][1] = Z * v1 * v1 + jump1 * e1r * v1;
  c[2][2] = Z * u3 * u3 + jump3 / e3r * u3;
  c[3][3] = Z * v3 * v3 - jump3 * e3r * v3;

  c[0][1] = Z * u1 * v1 - jump1 / e1r * v1;
  c[1][0] = Z * u1 * v1 + jump1 * e1r * u1;
  c[2][3] = Z * u3 * v3 + jump3 / e3r * v3;
  c[3][2] = Z * u3 * v3 - jump3 * e3r * u3;

  c[0][2] = c[2][0] = -Z * u1 * u3;
  c[0][3] = c[3][0] = -Z * u1 * v3;
  c[1][2] = c[2][1] = -Z * v1 * u3;
  c[1][3] = c[3][1] = -Z * v1 * v3;
  return cs;
}

Complex kernel_f(double xp, double x, const CoefficientSet& c,
                 const RootData& r) {
  const double hi = xp >= x ? xp : x;
  const double lo = xp >= x ? x : xp;
  Complex f{};
  for (int j = 0; j < 4; ++j) {
    const Complex ej = std::exp(kI * r.roots[j] * hi);
    for (int l = 0; l < 4; ++l)
      f += c.c[j][l] * ej * std::exp(kI * r.roots[l] * lo);
  }
  return f;
}

BaseComponents::BaseComponents(double e, const SystemParams& p)
    : e_(e), params_(p), roots_(compute_roots(e, p)),
      coeffs_(compute_coefficients(roots_, p.separation)) {
  const double g1 = p.gamma1, g2 = p.gamma2;
  zero_ = (g1 * g2 == 0.0);
  if (zero_) return;
  const double r = p.separation, phi = p.phase;
  const Complex lam = roots_.lambda, b = roots_.asym;
  const double rg12 = std::sqrt(g1 * g2);
  pref12_ = -kI * g1 / kPi;
  pref11_ = kI * rg12 / kPi;
  pref22_ = std::exp(-kI * (1.5 * e * r + 3.0 * phi)) / (8.0 * kPi * g2 * rg12);
  pref32_ = -kI * std::exp(-kI * (e * r + 2.0 * phi)) / (4.0 * kPi * rg12);
  pref02_ = std::exp(-kI * (0.5 * e * r + phi)) / (2.0 * kPi);
  pref31_ = kI * std::exp(-kI * (e * r + 2.0 * phi)) / (4.0 * kPi * g1);
  for (int j = 0; j < 4; ++j) {
    const Complex pj = roots_.roots[j];
    eipr_[j] = std::exp(kI * pj * r);
    w32_[j] = (pj - b) * (pj - b) - lam * lam;
    w22_[j] = w32_[j] * (pj + lam + b) * eipr_[j];
    w02_[j] = (pj + lam - b) * eipr_[j];
  }
}

Complex BaseComponents::t12p_reg(double kp, double k) const {
  if (zero_) return 0.0;
  const double r = params_.separation;
  const Complex ap = 0.5 * e_ - kp, a = 0.5 * e_ - k;
  Complex sum{};
  for (int j = 0; j < 4; ++j) {
    const Complex pj = roots_.roots[j];
    for (int l = 0; l < 4; ++l) {
      const Complex pl = roots_.roots[l];
      sum += coeffs_.c[j][l] *
             (triangle(ap + pj, a + pl, r) + triangle(a + pj, ap + pl, r));
    }
  }
  return pref12_ * sum;
}

Complex BaseComponents::t11p_reg(double kp, double k) const {
  if (zero_) return 0.0;
  const double r = params_.separation;
  const Complex lam = roots_.lambda, b = roots_.asym;
  const Complex ap = 0.5 * e_ - kp, a = 0.5 * e_ - k;
  Complex sum{};
  for (int j = 0; j < 4; ++j) {
    const Complex pj = roots_.roots[j];
    for (int l = 0; l < 4; ++l) {
      const Complex pl = roots_.roots[l];
      const Complex common = coeffs_.c[j][l] * eipr_[j] * eipr_[l];
      sum += common * ((pl + lam - b) / (pj - lam + b) *
                           triangle(a - pl, ap - pj, r) +
                       (pj + lam - b) / (pl - lam + b) *
                           triangle(ap - pl, a - pj, r));
    }
  }
  return pref11_ * sum;
}

Complex BaseComponents::t22p(double kp, double k) const {
  if (zero_) return 0.0;
  const double r = params_.separation;
  const Complex ap = 0.5 * e_ - kp, a = 0.5 * e_ - k;
  Complex sum{};
  for (int j = 0; j < 4; ++j) {
    const Complex pj = roots_.roots[j];
    for (int l = 0; l < 4; ++l) {
      const Complex pl = roots_.roots[l];
      sum += coeffs_.c[j][l] * (w22_[j] * corner(ap - pj, a + pl, r) +
                                w22_[l] * anti_corner(ap - pl, a + pj, r));
    }
  }
  return pref22_ * sum;
}

Complex BaseComponents::t32p(double kp, double k) const {
  if (zero_) return 0.0;
  const double r = params_.separation;
  const Complex ap = 0.5 * e_ - kp, a = 0.5 * e_ - k;
  Complex sum{};
  for (int j = 0; j < 4; ++j) {
    const Complex pj = roots_.roots[j];
    for (int l = 0; l < 4; ++l) {
      const Complex pl = roots_.roots[l];
      sum += coeffs_.c[j][l] * (w32_[j] * triangle(ap + pj, a + pl, r) +
                                w32_[l] * triangle(a + pj, ap + pl, r));
    }
  }
  return pref32_ * sum;
}

Complex BaseComponents::t02p(double kp, double k) const {
  if (zero_) return 0.0;
  const double r = params_.separation;
  const Complex ap = 0.5 * e_ - kp, a = 0.5 * e_ - k;
  Complex sum{};
  for (int j = 0; j < 4; ++j) {
    const Complex pj = roots_.roots[j];
    for (int l = 0; l < 4; ++l) {
      const Complex pl = roots_.roots[l];
      sum += coeffs_.c[j][l] * (w02_[j] * corner(ap - pj, a + pl, r) +
                                w02_[l] * anti_corner(ap - pl, a + pj, r));
    }
  }
  return pref02_ * sum;
}

Complex BaseComponents::t31p(double kp, double k) const {
  if (zero_) return 0.0;
  const double r = params_.separation;
  const Complex lam = roots_.lambda, b = roots_.asym;
  const Complex ap = 0.5 * e_ - kp, a = 0.5 * e_ - k;
  Complex sum{};
  for (int j = 0; j < 4; ++j) {
    const Complex pj = roots_.roots[j];
    for (int l = 0; l < 4; ++l) {
      const Complex pl = roots_.roots[l];
      sum += coeffs_.c[j][l] * (pj + lam - b) * (pl + lam - b) * eipr_[j] *
             eipr_[l] *
             (triangle(a - pl, ap - pj, r) + triangle(ap - pl, a - pj, r));
    }
  }
  return pref31_ * sum;
}

TaggedAmplitude t_1_2plus(double kp, double k, const BaseComponents& bc) {
  return {bc.t12p_reg(kp, k), bc.params().gamma1 / kPi};
}

ConvolutionComponents t_convolutions(double kp, double k,
                                     const BaseComponents& bc) {
  ConvolutionComponents out;
  out.t22p = bc.t22p(kp, k);
  out.t32p = bc.t32p(kp, k);
  out.t02p = bc.t02p(kp, k);
  out.t11p = {bc.t11p_reg(kp, k),
              std::sqrt(bc.params().gamma1 * bc.params().gamma2) / kPi};
  out.t31p = bc.t31p(kp, k);
  return out;
}

ComponentContext::ComponentContext(double e, const SystemParams& p)
    : e_(e), params_(p) {
  const RootData probe = compute_roots(e, p);
  const SystemParams swapped = swapped_params(p);
  if (probe.degenerate && p.gamma1 * p.gamma2 != 0.0) {
    averaged_ = true;
    const double eps = 1e-7 * std::max(p.gamma1, p.gamma2);
    direct_ = std::make_unique<BaseComponents>(e + eps, p);
    swapped_ = std::make_unique<BaseComponents>(e + eps, swapped);
    direct_lo_ = std::make_unique<BaseComponents>(e - eps, p);
    swapped_lo_ = std::make_unique<BaseComponents>(e - eps, swapped);
  } else {
    direct_ = std::make_unique<BaseComponents>(e, p);
    swapped_ = std::make_unique<BaseComponents>(e, swapped);
  }
}

VertexComponents ComponentContext::eval_at(const BaseComponents& d,
                                           const BaseComponents& s, double kp,
                                           double k) const {
  VertexComponents v;
  // a = 0 chain: T2+ --T--> T1+, T2+ --I--> T1-, T1- --T--> T2-
  v.t2p = d.t02p(kp, k);
  v.t1p = d.t02p(k, kp);
  v.t1m = s.t02p(kp, k);
  v.t2m = s.t02p(k, kp);
  // a = 1: T12+ is T-symmetric; T11- = I[T12+]; T12- = I[T11+]
  v.t12p = d.t12p_reg(kp, k);
  v.t11m = s.t12p_reg(kp, k);
  v.t11p = d.t11p_reg(kp, k);
  v.t12m = s.t11p_reg(kp, k);
  // a = 2 chain: T22- = T[T22+], T21- = I[T22+], T21+ = T[T21-]
  v.t22p = d.t22p(kp, k);
  v.t22m = d.t22p(k, kp);
  v.t21m = s.t22p(kp, k);
  v.t21p = s.t22p(k, kp);
  // a = 3: T31+ T-symmetric; T32- = I[T31+]; T31- = T[T32+] (= I[T32+])
  v.t32p = d.t32p(kp, k);
  v.t31m = d.t32p(k, kp);
  v.t31p = d.t31p(kp, k);
  v.t32m = s.t31p(kp, k);
  return v;
}

VertexComponents ComponentContext::all_components(double kp, double k) const {
  VertexComponents v = eval_at(*direct_, *swapped_, kp, k);
  if (!averaged_) return v;
  const VertexComponents w = eval_at(*direct_lo_, *swapped_lo_, kp, k);
  auto avg = [](Complex& a, const Complex& b) { a = 0.5 * (a + b); };
  avg(v.t1p, w.t1p); avg(v.t2p, w.t2p); avg(v.t1m, w.t1m); avg(v.t2m, w.t2m);
  avg(v.t11p, w.t11p); avg(v.t12p, w.t12p); avg(v.t11m, w.t11m);
  avg(v.t12m, w.t12m);
  avg(v.t21p, w.t21p); avg(v.t22p, w.t22p); avg(v.t21m, w.t21m);
  avg(v.t22m, w.t22m);
  avg(v.t31p, w.t31p); avg(v.t32p, w.t32p); avg(v.t31m, w.t31m);
  avg(v.t32m, w.t32m);
  return v;
}

}  // namespace waveqed
