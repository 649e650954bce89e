#ifndef WAVEQED_QUADRATURE_HPP
#define WAVEQED_QUADRATURE_HPP

#include <functional>

#include "waveqed/params.hpp"

namespace waveqed::quad {

using Integrand = std::function<Complex(double)>;
using Integrand2D = std::function<Complex(double, double)>;

/// Single Gauss7/Kronrod15 panel; err is the G7-K15 discrepancy estimate.
Complex gk15(const Integrand& f, double a, double b, double& err);

/// Adaptive bisection to abs_tol (or rel_tol * |I|).
Complex integrate(const Integrand& f, double a, double b, double abs_tol,
                  double rel_tol = 1e-12, int max_depth = 40);

/// Tensor-adaptive 2D integral over [ax,bx] x [ay,by] (outer adaptive in x,
/// inner adaptive in y at a tighter tolerance).
Complex integrate_2d(const Integrand2D& f, double ax, double bx, double ay,
                     double by, double abs_tol);

/// Gauss-Legendre nodes/weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

/// Improper oscillatory integral int_a^inf f dk for integrands that decay
/// like e^{i k period_phase}/k: fixed panels of half-period `step` summed
/// with iterated Euler averaging of the partial sums. direction = +-1.
Complex oscillatory_tail(const Integrand& f, double start, double direction,
                         double step, int n_segments = 64);

}  // namespace waveqed::quad

#endif
