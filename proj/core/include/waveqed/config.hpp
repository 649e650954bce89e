#ifndef WAVEQED_CONFIG_HPP
#define WAVEQED_CONFIG_HPP

#include <string>
#include <vector>

#include "waveqed/params.hpp"
#include "waveqed/scattering.hpp"

namespace waveqed {

enum class Experiment { s1, roots, density, g2, ratio, verify };

enum class RunMode { exact, markov, both };

/// Validated run configuration parsed from the sectioned key=value format.
struct RunConfig {
  SystemParams params;
  Experiment experiment = Experiment::verify;
  RunMode mode = RunMode::exact;

  double energy = 0.0;
  double delta_in = 0.0;

  // momentum sweep (s1) and energy sweep (roots)
  double k_min = -5.0, k_max = 5.0;
  int n_k = 201;
  double e_min = -5.0, e_max = 5.0;
  int n_e = 201;

  // density grid: Delta' in [-delta_max, delta_max]
  double delta_max = 0.0;  // 0: default 12 * max|Omega| (or 12 if zero)
  int n_delta = 4801;

  // g2 / ratio grids
  double kappa_extent = 0.0;  // 0: default 40 * Gamma_max
  int n_kappa = 8001;
  double tau_max = 0.0;  // 0: default 6 R
  int n_tau = 1201;
  double tau = -1.0;  // ratio delay; < 0: default R

  std::string output_path = "out.csv";
};

/// Parses the config text. Unknown keys, missing required keys and
/// out-of-range values throw std::invalid_argument with the key path and
/// line number. Overrides are later applied as "section.key=value" pairs.
RunConfig parse_config(const std::string& text,
                       const std::vector<std::string>& overrides = {});

/// Executes the experiment; returns the process exit status (0 success,
/// 2 verification failure). CSV rows are fixed-format (17 significant
/// digits, '.' decimal separator, '\n' endings).
int run(const RunConfig& config);

}  // namespace waveqed

#endif
