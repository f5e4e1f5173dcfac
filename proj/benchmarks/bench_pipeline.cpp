#include <benchmark/benchmark.h>

#include "kdvbf/bloch.hpp"
#include "kdvbf/hopf.hpp"
#include "kdvbf/orbit.hpp"
#include "kdvbf/spectrum.hpp"

namespace {

using namespace kdvbf;

const WaveProfile& orbit_004() {
  static const WaveProfile orbit =
      solve_orbit(initial_guess(0.004, Params::make(1.0, 1.0)), 32, 1e-10);
  return orbit;
}

void BM_DetectHopf(benchmark::State& state) {
  const Params params = Params::make(1.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_hopf(params, 1e-12));
  }
}
BENCHMARK(BM_DetectHopf);

void BM_SolveOrbit(benchmark::State& state) {
  const Params params = Params::make(1.0, 1.0);
  const WaveProfile guess = initial_guess(0.004, params);
  const int M = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_orbit(guess, M, 1e-10));
  }
}
BENCHMARK(BM_SolveOrbit)->Arg(16)->Arg(32)->Arg(64);

void BM_AssembleBloch(benchmark::State& state) {
  const WaveProfile& orbit = orbit_004();
  const CoeffSeries coeffs = linearized_coeffs(orbit);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_bloch(0.7, coeffs, orbit.period, N));
  }
}
BENCHMARK(BM_AssembleBloch)->Arg(24)->Arg(48);

void BM_EigDense(benchmark::State& state) {
  const WaveProfile& orbit = orbit_004();
  const CoeffSeries coeffs = linearized_coeffs(orbit);
  const BlochMatrix matrix =
      assemble_bloch(0.7, coeffs, orbit.period, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eig_dense(matrix));
  }
}
BENCHMARK(BM_EigDense)->Arg(24)->Arg(48);

void BM_FloquetSweep(benchmark::State& state) {
  const WaveProfile& orbit = orbit_004();
  for (auto _ : state) {
    benchmark::DoNotOptimize(floquet_sweep(orbit, static_cast<int>(state.range(0)), 24));
  }
}
BENCHMARK(BM_FloquetSweep)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
