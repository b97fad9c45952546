#include <benchmark/benchmark.h>

#include "qinstr/gate_audit.hpp"
#include "qinstr/random.hpp"
#include "qinstr/uncertainty.hpp"

using namespace qinstr;

static void BM_SpectralClusters(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const Observable obs = random_hermitian(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_clusters(obs));
}
BENCHMARK(BM_SpectralClusters)->Arg(4)->Arg(8)->Arg(16);

static void BM_InstrumentChain(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const int d = static_cast<int>(state.range(0));
  const KrausInstrument instr = random_instrument(d, 2, 2, rng);
  const DensityOperator rho = random_density(d, rng);
  const Observable a = random_hermitian(d, rng);
  const Observable b = random_hermitian(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(instrument_chain(a, b, instr, rho));
}
BENCHMARK(BM_InstrumentChain)->Arg(2)->Arg(3)->Arg(4);

static void BM_GateFidelity(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const Matrix u = conserving_unitary(ancilla_spin_x(1), rng);
  const GateImplementation impl(2, u, random_pure(2, rng));
  OptimizerConfig opt;
  opt.cb_samples = 1;
  for (auto _ : state) benchmark::DoNotOptimize(gate_fidelity(impl, opt));
}
BENCHMARK(BM_GateFidelity);

static void BM_DilateInstrument(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const KrausInstrument instr = random_instrument(static_cast<int>(state.range(0)), 2, 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(dilate_instrument(instr));
}
BENCHMARK(BM_DilateInstrument)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
