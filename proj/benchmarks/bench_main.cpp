#include <benchmark/benchmark.h>

#include <vector>

#include "quasispec/quasispec.hpp"

using namespace quasispec;

namespace {

void BM_FloquetSolve(benchmark::State& state) {
  const double amp = static_cast<double>(state.range(0));
  const AtomicHamiltonian h = qubit_hamiltonian(1.05, 0.37, amp);
  const TruncationSpec t = TruncationSpec::automatic(h, 1.0, 1e-10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_quasienergies(h, 1.0, t));
  }
}
BENCHMARK(BM_FloquetSolve)->Arg(1)->Arg(6)->Arg(20);

void BM_MonodromyPropagator(benchmark::State& state) {
  const AtomicHamiltonian h = qubit_hamiltonian(1.05, 0.37, 5.6);
  for (auto _ : state) benchmark::DoNotOptimize(monodromy_quasienergies(h, 1.0));
}
BENCHMARK(BM_MonodromyPropagator);

void BM_AbsorptionPoint(benchmark::State& state) {
  const double kappa = calibrate_kappa(0.016, resonant_reference(0.37), 2.24);
  ProbeSpec probe;
  probe.omega_p = 0.092;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qubit_absorption({1.05, 0.37, 3.3}, {kappa, 2.24}, probe));
  }
}
BENCHMARK(BM_AbsorptionPoint);

void BM_TwoModeSeparation(benchmark::State& state) {
  TwoModeTruncation t;
  t.n1_cutoff = 23;
  t.n2_cutoff = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(anticrossing_separation({2.08, 0.37, 5.6}, 0.2, 0.1, t));
  }
}
BENCHMARK(BM_TwoModeSeparation)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_KramersKronig(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> grid(n), absorption(n);
  for (int i = 0; i < n; ++i) {
    const double w = -1.0 + 2.0 * i / (n - 1);
    grid[i] = w;
    absorption[i] = 0.01 / (w * w + 1e-4);
  }
  for (auto _ : state) benchmark::DoNotOptimize(kramers_kronig(grid, absorption));
}
BENCHMARK(BM_KramersKronig)->Arg(1024)->Arg(16384);

}  // namespace

BENCHMARK_MAIN();
