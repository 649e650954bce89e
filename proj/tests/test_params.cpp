#include "doctest.h"
#include "waveqed/params.hpp"

#include <random>
#include <stdexcept>

using namespace waveqed;

TEST_CASE("sign factor convention") {
  CHECK(sign_factor(1) == 1.0);
  CHECK(sign_factor(2) == -1.0);
  CHECK(sign_factor(1) * sign_factor(2) == -1.0);
  CHECK_THROWS_AS(sign_factor(0), std::invalid_argument);
  CHECK_THROWS_AS(sign_factor(3), std::invalid_argument);
}

TEST_CASE("swapped params") {
  SystemParams p{2.0, -2.0, 1.0, 1.0, 1.0, 0.3};
  const SystemParams q = swapped_params(p);
  CHECK(q.omega1 == -2.0);
  CHECK(q.omega2 == 2.0);
  CHECK(q.gamma1 == 1.0);
  CHECK(q.separation == 1.0);
  CHECK(q.phase == 0.3);

  SystemParams sym{1.5, 1.5, 0.7, 0.7, 2.0, 0.0};
  const SystemParams qs = swapped_params(sym);
  CHECK(qs.omega1 == sym.omega1);
  CHECK(qs.gamma2 == sym.gamma2);
}

TEST_CASE("swap is an involution for random parameters") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    SystemParams p{u(rng), u(rng), std::abs(u(rng)), std::abs(u(rng)),
                   std::abs(u(rng)), u(rng)};
    const SystemParams q = swapped_params(swapped_params(p));
    CHECK(q.omega1 == p.omega1);
    CHECK(q.omega2 == p.omega2);
    CHECK(q.gamma1 == p.gamma1);
    CHECK(q.gamma2 == p.gamma2);
  }
}

TEST_CASE("shifted frequencies decay into the lower half plane") {
  SystemParams p{0.5, -0.5, 0.25, 0.75, 1.0, 0.0};
  CHECK(p.omega_tilde(1).imag() < 0.0);
  CHECK(p.omega_tilde(2).imag() < 0.0);
  CHECK(p.omega_tilde(1) == Complex(0.5, -0.5));
}

TEST_CASE("validation rejects bad parameters") {
  SystemParams p{0.0, 0.0, -1.0, 0.0, 1.0, 0.0};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  SystemParams q{0.0, 0.0, 1.0, 1.0, -2.0, 0.0};
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
}

TEST_CASE("phase normalization is display-only") {
  SystemParams p{0.0, 0.0, 1.0, 1.0, 1.0, -1.5 * kPi};
  CHECK(p.phase == -1.5 * kPi);
  CHECK(normalized_phase(p) == doctest::Approx(0.5 * kPi));
}

TEST_CASE("energy shell kinematics") {
  EnergyShell s;
  s.total_energy = 1.0;
  s.delta_in = 0.4;
  s.delta_out_grid = {-1.0, 0.0, 1.0};
  s.validate();
  CHECK(s.k_in(1) == doctest::Approx(0.7));
  CHECK(s.k_in(2) == doctest::Approx(0.3));
  CHECK(s.k_out(1, -1.0) == doctest::Approx(0.0));
  s.delta_out_grid = {0.0, 0.0};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
