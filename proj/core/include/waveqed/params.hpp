#ifndef WAVEQED_PARAMS_HPP
#define WAVEQED_PARAMS_HPP

#include <array>
#include <complex>
#include <vector>

namespace waveqed {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Channel/qubit sign c_alpha = (-1)^(alpha+1): +1 for index 1, -1 for index 2.
double sign_factor(int index);

/// Physical parameters of the two-qubit waveguide system, units hbar = v_g = 1.
/// Qubit beta has detuning Omega_beta, relaxation rate Gamma_beta; the qubits
/// sit at +-R/2 and phi = k0*R carries the linearization point.
struct SystemParams {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double separation = 0.0;  // R
  double phase = 0.0;       // phi, stored as given (not reduced mod 2pi)

  double omega(int beta) const { return beta == 1 ? omega1 : omega2; }
  double gamma(int beta) const { return beta == 1 ? gamma1 : gamma2; }

  /// Shifted complex frequency Omega_beta - 2i*Gamma_beta.
  Complex omega_tilde(int beta) const {
    return Complex(omega(beta), -2.0 * gamma(beta));
  }
  /// Coupling g_beta = sqrt(Gamma_beta / pi).
  double g(int beta) const;

  /// Throws std::invalid_argument when a constraint is violated.
  void validate() const;
};

/// Exchange of the qubit parameters (the I operation): 1 <-> 2.
SystemParams swapped_params(const SystemParams& p);

/// phi reduced to [0, 2pi); display helper only, formulas are 2pi-periodic.
double normalized_phase(const SystemParams& p);

/// On-shell kinematics: total energy E, input momentum difference Delta = 2k
/// and an ordered grid of output differences Delta'. Momenta recover as
/// k1 = (E+Delta)/2, k2 = (E-Delta)/2 with linearization point k0 = E/2.
struct EnergyShell {
  double total_energy = 0.0;
  double delta_in = 0.0;
  std::vector<double> delta_out_grid;

  double k_in(int leg) const {
    return leg == 1 ? 0.5 * (total_energy + delta_in)
                    : 0.5 * (total_energy - delta_in);
  }
  double k_out(int leg, double delta_out) const {
    return leg == 1 ? 0.5 * (total_energy + delta_out)
                    : 0.5 * (total_energy - delta_out);
  }

  /// Throws std::invalid_argument unless delta_out_grid is strictly increasing.
  void validate() const;
};

/// Minimal dense 2x2 complex matrix in the one-excitation basis {|eg>, |ge>}.
struct Mat2 {
  Complex a00{}, a01{}, a10{}, a11{};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 outer(const std::array<Complex, 2>& col,
                    const std::array<Complex, 2>& row) {
    return {col[0] * row[0], col[0] * row[1], col[1] * row[0], col[1] * row[1]};
  }

  Mat2 operator+(const Mat2& o) const {
    return {a00 + o.a00, a01 + o.a01, a10 + o.a10, a11 + o.a11};
  }
  Mat2 operator-(const Mat2& o) const {
    return {a00 - o.a00, a01 - o.a01, a10 - o.a10, a11 - o.a11};
  }
  Mat2 operator*(const Mat2& o) const {
    return {a00 * o.a00 + a01 * o.a10, a00 * o.a01 + a01 * o.a11,
            a10 * o.a00 + a11 * o.a10, a10 * o.a01 + a11 * o.a11};
  }
  Mat2 operator*(Complex s) const { return {a00 * s, a01 * s, a10 * s, a11 * s}; }
  friend Mat2 operator*(Complex s, const Mat2& m) { return m * s; }

  std::array<Complex, 2> apply(const std::array<Complex, 2>& v) const {
    return {a00 * v[0] + a01 * v[1], a10 * v[0] + a11 * v[1]};
  }
  double max_abs() const;
};

/// row . M . col
Complex sandwich(const std::array<Complex, 2>& row, const Mat2& m,
                 const std::array<Complex, 2>& col);

}  // namespace waveqed

#endif
