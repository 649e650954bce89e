#ifndef WAVEQED_ORACLE_HPP
#define WAVEQED_ORACLE_HPP

#include <string>
#include <vector>

#include "waveqed/scattering.hpp"
#include "waveqed/vertex.hpp"

namespace waveqed::oracle {

/// f^(4)(x',x): the coordinate-space kernel of the Fredholm equation,
/// a triple convolution of the truncated exponentials
///   f^{+-}(x) = 2 Gamma_{1,2} Theta(R-x) e^{i(ER/2+phi)} e^{i(lambda -+ b)(R-x)}.
/// Evaluated by analytic nesting: for fixed (x',x) the x1 and x3 integrals
/// factor and the remaining x2 integral is piecewise exponential.
Complex kernel_f4(double xp, double x, const SystemParams& p, double e);

/// Same value by 3D adaptive quadrature (slow; cross-check only).
Complex kernel_f4_quadrature(double xp, double x, const SystemParams& p,
                             double e, double abs_tol = 1e-9);

/// Nystrom solution of F = f4 + int_0^R f4 F on Gauss-Legendre nodes.
struct NystromSolution {
  std::vector<double> nodes, weights;
  std::vector<std::vector<Complex>> f_grid;  // F(node_i, node_j)
  double condition_estimate = 0.0;

  /// Nystrom interpolation to an arbitrary pair (solves one extra column).
  Complex value(double xp, double x) const;

  // interpolation context
  const SystemParams* params = nullptr;
  double energy = 0.0;
  std::vector<std::vector<Complex>> resolvent;  // (I-K)^{-1}
};

/// Throws std::runtime_error if the condition estimate exceeds 1e12.
/// The kernel is C1 but not C2 across the diagonal, so the plain rule
/// converges like order^-4 (not spectrally); pick the order accordingly.
NystromSolution nystrom_solve(const SystemParams& p, double e, int order);

/// Nystrom interpolation of a solution onto an arbitrary evaluation grid,
/// one resolvent application per column.
std::vector<std::vector<Complex>> nystrom_on_grid(
    const NystromSolution& sol, const std::vector<double>& xs);

/// Boundary-condition residuals of the closed-form ansatz, from analytic
/// per-term derivatives (relative to the natural term scales):
///   value_at_r:  F(R,x) = 0
///   slope_at_0:  dF/dx'(0,x) + i(lambda-b) F(0,x) = 0
///   curvature_at_r: d2F/dx'2(R,x) - 2ib dF/dx'(R,x) = 0
///   jump_source: d3F/dx'3(0+,0) + i(lambda-b) d2F/dx'2(0+,0) + 4 lam^2 nu^2 = 0
struct BoundaryResiduals {
  double value_at_r = 0.0;
  double slope_at_0 = 0.0;
  double curvature_at_r = 0.0;
  double jump_source = 0.0;
  double max() const;
};

BoundaryResiduals verify_f_boundary(const RootData& r,
                                    const CoefficientSet& c);

/// Interior ODE residual of the closed form by central finite differences at
/// step h = R/2000, evaluated in quadruple precision so the h^-4 stencil
/// noise stays below the tolerance. Relative to the operator scale.
double ode_fd_residual(const RootData& r, const CoefficientSet& c,
                       double xp, double x);

/// Discretized two-photon optical theorem on the result's shell grid.
struct UnitarityBudget {
  double elastic = 0.0;
  double interference = 0.0;
  double inelastic = 0.0;
  double total = 0.0;
  double deviation = 0.0;  // |total - 1|
};

UnitarityBudget unitarity_budget(const TwoPhotonResult& r,
                                 const SystemParams& p);

/// Momentum-integral oracles for the effective objects: central adaptive
/// window plus Euler-accelerated oscillatory tails, the real w^(i) pole
/// handled by analytic subtraction.
Complex f2p_oracle(double e, double k, const SystemParams& p);
Complex f1p_oracle(double e, double k, const SystemParams& p);
Complex sigma_pp_oracle(double e, const SystemParams& p);

/// T^{(2)2+}(k',k) rebuilt from its defining momentum convolution of
/// T^{(1)2+} (independent of the strip closed form).
Complex t22p_convolution_oracle(double kp, double k, double e,
                                const SystemParams& p);

/// Independently coded single-scatterer two-photon amplitude (qubit 1 only):
///   t = 2 (Gamma^2/pi^2) Phi (2 Omega~ - E) / prod_i (k_i - Omega~).
Complex single_qubit_t2(int out1, double kp1, int out2, double kp2, int in1,
                        double k1, int in2, double k2, double omega,
                        double gamma, double separation, double phase);

/// One verification check: `CHECK <name> <pass|fail> <residual>`.
struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

/// Full self-verification suite at the given parameters and energy.
std::vector<CheckResult> run_verification(const SystemParams& p, double e);

}  // namespace waveqed::oracle

#endif
