#include <benchmark/benchmark.h>

#include "waveqed/effective.hpp"
#include "waveqed/observables.hpp"
#include "waveqed/oracle.hpp"
#include "waveqed/scattering.hpp"
#include "waveqed/single_photon.hpp"
#include "waveqed/vertex.hpp"

namespace {

using namespace waveqed;

SystemParams transparency(double gamma_r) {
  return {2.0, -2.0, 1.0, 1.0, gamma_r, 0.0};
}

void BM_S1Matrix(benchmark::State& state) {
  const SystemParams p = transparency(1.0);
  double k = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s1_matrix(k, p));
    k += 1e-6;
  }
}
BENCHMARK(BM_S1Matrix);

void BM_EnergyContextBuild(benchmark::State& state) {
  const SystemParams p = transparency(1.0);
  for (auto _ : state) {
    SolverContext ctx(0.0, p, Mode::exact);
    benchmark::DoNotOptimize(&ctx);
  }
}
BENCHMARK(BM_EnergyContextBuild);

void BM_ComponentTable(benchmark::State& state) {
  const SystemParams p = transparency(1.0);
  const ComponentContext ctx(0.0, p);
  double kp = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctx.all_components(kp, -0.4));
    kp += 1e-6;
  }
}
BENCHMARK(BM_ComponentTable);

void BM_InelasticAmplitude(benchmark::State& state) {
  const SystemParams p = transparency(1.0);
  const SolverContext ctx(0.0, p, Mode::exact);
  double dp = 0.4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctx.inelastic_amplitude(2, 1, dp, 1, 2, 0.0));
    dp += 1e-6;
  }
}
BENCHMARK(BM_InelasticAmplitude);

void BM_DensitySweep(benchmark::State& state) {
  const SystemParams p = transparency(1.0);
  EnergyShell shell;
  shell.total_energy = 0.0;
  shell.delta_in = 0.0;
  const int n = static_cast<int>(state.range(0));
  for (int i = 0; i < n; ++i)
    shell.delta_out_grid.push_back(-8.0 + 16.0 * i / (n - 1.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_two_photon(shell, 1, 2, p));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_DensitySweep)->Arg(201)->Arg(801);

void BM_NystromSolve(benchmark::State& state) {
  const SystemParams p = transparency(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        oracle::nystrom_solve(p, 0.0, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_NystromSolve)->Arg(64)->Arg(128);

void BM_G2Point(benchmark::State& state) {
  const SystemParams p = transparency(1.0);
  G2Settings s;
  s.n_kappa = 2001;
  s.n_wing = 500;
  const EnergyShell shell = g2_shell(0.0, 0.0, p, s);
  const TwoPhotonResult r = compute_two_photon(shell, 1, 2, p);
  double tau = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g2_pair(r, 2, 1, {tau}));
    tau += 1e-6;
  }
}
BENCHMARK(BM_G2Point);

}  // namespace

BENCHMARK_MAIN();
