#include <benchmark/benchmark.h>

#include "bentchain/defect_optimizer.hpp"
#include "bentchain/eigensolver.hpp"
#include "bentchain/propagator.hpp"
#include "bentchain/reference.hpp"
#include "bentchain/sweep.hpp"

namespace {

using namespace bentchain;

void BM_JacobiEigensystem(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = build_hamiltonian(ChainSpec::protocol2(n), BendSpec{(n + 1) / 2, 0.5, -1.0});
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_eigensystem(h.entries()));
}
BENCHMARK(BM_JacobiEigensystem)->Arg(12)->Arg(25)->Arg(50);

void BM_FirstMaximum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto spec = ChainSpec::protocol2(n);
  const auto h = build_hamiltonian(spec, BendSpec{(n + 1) / 2, 0.4, 0.0});
  const double t_end = reference(spec).t0;
  for (auto _ : state) benchmark::DoNotOptimize(first_maximum(h, t_end, kDefaultSteps));
}
BENCHMARK(BM_FirstMaximum)->Arg(12)->Arg(25);

void BM_OptimizeDetuning(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto spec = ChainSpec::protocol2(n);
  const auto ref = reference(spec);
  for (auto _ : state) benchmark::DoNotOptimize(optimize_detuning(spec, BendSpec{(n + 1) / 2, 0.7, 0.0}, ref));
}
BENCHMARK(BM_OptimizeDetuning)->Arg(12)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_CalibrateProtocol1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(calibrate_protocol1(n));
}
BENCHMARK(BM_CalibrateProtocol1)->Arg(12)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_SweepKappaOptimized(benchmark::State& state) {
  const auto spec = ChainSpec::protocol2(13);
  const auto ref = reference(spec);
  const std::vector<double> kappas{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  SweepOptions options;
  options.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_kappa(spec, 7, kappas, ref, true, options));
}
BENCHMARK(BM_SweepKappaOptimized)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
