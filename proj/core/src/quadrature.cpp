#include "waveqed/quadrature.hpp"

#include <cmath>
#include <vector>

namespace waveqed::quad {

namespace {

// Kronrod-15 abscissae on [0,1] with Gauss-7 and Kronrod weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace

Complex gk15(const Integrand& f, double a, double b, double& err) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  Complex resk{}, resg{};
  for (int i = 0; i < 8; ++i) {
    if (i == 7) {
      const Complex v = f(c);
      resk += kWk[7] * v;
      resg += kWg[3] * v;
      break;
    }
    const Complex vp = f(c + h * kXgk[i]);
    const Complex vm = f(c - h * kXgk[i]);
    resk += kWk[i] * (vp + vm);
    if (i % 2 == 1) resg += kWg[i / 2] * (vp + vm);
  }
  resk *= h;
  resg *= h;
  err = std::abs(resk - resg);
  return resk;
}

namespace {

Complex adapt(const Integrand& f, double a, double b, double tol, int depth,
              int max_depth) {
  double err;
  const Complex whole = gk15(f, a, b, err);
  if (err <= tol || depth >= max_depth) return whole;
  const double m = 0.5 * (a + b);
  return adapt(f, a, m, 0.5 * tol, depth + 1, max_depth) +
         adapt(f, m, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

Complex integrate(const Integrand& f, double a, double b, double abs_tol,
                  double rel_tol, int max_depth) {
  double err;
  const Complex rough = gk15(f, a, b, err);
  const double tol = std::max(abs_tol, rel_tol * std::abs(rough));
  if (err <= tol) return rough;
  const double m = 0.5 * (a + b);
  return adapt(f, a, m, 0.5 * tol, 1, max_depth) +
         adapt(f, m, b, 0.5 * tol, 1, max_depth);
}

Complex integrate_2d(const Integrand2D& f, double ax, double bx, double ay,
                     double by, double abs_tol) {
  const double inner_tol = 0.05 * abs_tol / (bx - ax);
  const Integrand outer = [&](double x) {
    return integrate([&](double y) { return f(x, y); }, ay, by, inner_tol);
  };
  return integrate(outer, ax, bx, abs_tol);
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  // Newton on Legendre P_n, standard symmetric construction
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    nodes[i] = xm - xl * x;
    nodes[n - 1 - i] = xm + xl * x;
    weights[i] = 2.0 * xl / ((1.0 - x * x) * pp * pp);
    weights[n - 1 - i] = weights[i];
  }
}

Complex oscillatory_tail(const Integrand& f, double start, double direction,
                         double step, int n_segments) {
  // Longman segmentation over full oscillation periods: period-averaging
  // kills the oscillatory remainder to higher order, so the checkpoint
  // partial sums admit a smooth expansion in 1/S which Richardson
  // extrapolation (Neville to 1/S -> 0) removes.
  n_segments = std::max(n_segments, 8);
  const int n_checkpoints = 4;
  const int per = n_segments / n_checkpoints;
  std::vector<Complex> u;      // partial sums at checkpoints
  std::vector<double> x;       // 1/S at checkpoints
  Complex acc{};
  double err;
  for (int m = 0; m < per * n_checkpoints; ++m) {
    const double a = start + direction * step * m;
    const double b = start + direction * step * (m + 1);
    acc += gk15(f, std::min(a, b), std::max(a, b), err) * direction;
    if ((m + 1) % per == 0) {
      u.push_back(acc);
      x.push_back(1.0 / (start + step * (m + 1)));
    }
  }
  // Neville tableau toward x = 0
  for (std::size_t level = 1; level < u.size(); ++level)
    for (std::size_t i = u.size() - 1; i >= level; --i) {
      u[i] = (x[i - level] * u[i] - x[i] * u[i - 1]) / (x[i - level] - x[i]);
      if (i == level) break;
    }
  return u.back();
}

}  // namespace waveqed::quad
