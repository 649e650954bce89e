#include "waveqed/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace waveqed {

double sign_factor(int index) {
  if (index != 1 && index != 2)
    throw std::invalid_argument("sign_factor: index must be 1 or 2, got " +
                                std::to_string(index));
  return index == 1 ? 1.0 : -1.0;
}

double SystemParams::g(int beta) const { return std::sqrt(gamma(beta) / kPi); }

void SystemParams::validate() const {
  if (!(gamma1 >= 0.0) || !(gamma2 >= 0.0))
    throw std::invalid_argument("SystemParams: gamma rates must be >= 0");
  if (gamma1 == 0.0 && gamma2 == 0.0 && !(gamma1 + gamma2 >= 0.0))
    throw std::invalid_argument("SystemParams: gammas must be finite");
  if (!(separation >= 0.0))
    throw std::invalid_argument("SystemParams: separation must be >= 0");
  if (!std::isfinite(omega1) || !std::isfinite(omega2) ||
      !std::isfinite(gamma1) || !std::isfinite(gamma2) ||
      !std::isfinite(separation) || !std::isfinite(phase))
    throw std::invalid_argument("SystemParams: all parameters must be finite");
}

SystemParams swapped_params(const SystemParams& p) {
  SystemParams q = p;
  q.omega1 = p.omega2;
  q.omega2 = p.omega1;
  q.gamma1 = p.gamma2;
  q.gamma2 = p.gamma1;
  return q;
}

double normalized_phase(const SystemParams& p) {
  double t = std::fmod(p.phase, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  return t;
}

void EnergyShell::validate() const {
  for (std::size_t i = 1; i < delta_out_grid.size(); ++i)
    if (!(delta_out_grid[i] > delta_out_grid[i - 1]))
      throw std::invalid_argument(
          "EnergyShell: delta_out_grid must be strictly increasing");
}

double Mat2::max_abs() const {
  return std::max(std::max(std::abs(a00), std::abs(a01)),
                  std::max(std::abs(a10), std::abs(a11)));
}

Complex sandwich(const std::array<Complex, 2>& row, const Mat2& m,
                 const std::array<Complex, 2>& col) {
  return row[0] * (m.a00 * col[0] + m.a01 * col[1]) +
         row[1] * (m.a10 * col[0] + m.a11 * col[1]);
}

}  // namespace waveqed
