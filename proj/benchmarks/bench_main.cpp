#include <benchmark/benchmark.h>

#include "strongfield/saddle.hpp"
#include "strongfield/sfa.hpp"
#include "strongfield/tdse.hpp"

using namespace strongfield;

namespace {

const PulseParams kPulse{0.0834, 0.056, 4, 0.0};

void BM_SfaAmplitude(benchmark::State& state) {
  const SfaIntegrator sfa{Field(kPulse)};
  const auto st = BoundStateModel::make(StateKind::kPOdd, 0.5);
  const Gauge gauge = state.range(0) ? Gauge::kVelocity : Gauge::kLength;
  const Vec3 p{0.0, 0.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(sfa.amplitude(p, gauge, st));
}
BENCHMARK(BM_SfaAmplitude)->Arg(0)->Arg(1);

void BM_SolveSaddles(benchmark::State& state) {
  const Field field(kPulse);
  const auto st = BoundStateModel::make(StateKind::kSEven, 0.5);
  const Vec3 p{0.1, 0.0, 0.9};
  for (auto _ : state) benchmark::DoNotOptimize(solve_saddles(p, field, st));
}
BENCHMARK(BM_SolveSaddles);

void BM_SpaAmplitude(benchmark::State& state) {
  const Field field(kPulse);
  const auto st = BoundStateModel::make(StateKind::kPOdd, 0.5);
  const Vec3 p{0.0, 0.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(spa_amplitude(p, Gauge::kLength, st, field));
}
BENCHMARK(BM_SpaAmplitude);

// Cost of one Crank-Nicolson step on the production radial grid, per partial-wave count.
void BM_TdseStep(benchmark::State& state) {
  const int l_max = static_cast<int>(state.range(0));
  const auto grid = RadialGrid::from_extent(0.1, 400.0);
  const CutCoulomb pot{1.0, 2.0};
  const auto ground = radial_eigenstate(pot, 0, 0, grid);
  const auto psi = PartialWaveFunction::from_radial(grid, l_max, 0, ground.u);
  PropagationOptions opt;
  constexpr int kSteps = 20;
  opt.t_final = kSteps * opt.dt;
  for (auto _ : state) benchmark::DoNotOptimize(propagate(psi, pot, Field(kPulse), opt));
  state.SetItemsProcessed(state.iterations() * kSteps);
}
BENCHMARK(BM_TdseStep)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
