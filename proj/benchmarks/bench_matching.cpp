#include "matching/fixtures/double_pendulum.hpp"
#include "matching/fixtures/pendulum.hpp"
#include "matching/geometry.hpp"
#include "matching/matching.hpp"
#include "matching/rigidity.hpp"
#include "matching/synthesis.hpp"

#include <benchmark/benchmark.h>

using namespace matching;

namespace {

const Vec kX = (Vec(3) << 0.2, -0.1, 0.15).finished();
const Vec kV = (Vec(3) << 0.3, 0.2, -0.4).finished();

void BM_Christoffel(benchmark::State& st) {
  const MechanicalSystem sys = pendulum_system(0.9, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(christoffel_first(sys, kX));
}
BENCHMARK(BM_Christoffel);

void BM_LambdaResidual(benchmark::State& st) {
  const PendulumFixture fx = pendulum_fixture(PendulumParams{});
  for (auto _ : st) benchmark::DoNotOptimize(lambda_residual(fx.system, fx.lambda, kX));
}
BENCHMARK(BM_LambdaResidual);

void BM_ControlLaw(benchmark::State& st) {
  const PendulumFixture fx = pendulum_fixture(PendulumParams{});
  const State s(kX, kV);
  for (auto _ : st) benchmark::DoNotOptimize(control_law(fx.system, fx.target, s));
}
BENCHMARK(BM_ControlLaw);

void BM_ClosedLoopSecond(benchmark::State& st) {
  const PendulumFixture fx = pendulum_fixture(PendulumParams{});
  const State s(kX, kV);
  for (auto _ : st) benchmark::DoNotOptimize(simulate_closed_loop(fx.system, fx.target, s, {1.0, 1e-3, 100, 1e6}));
}
BENCHMARK(BM_ClosedLoopSecond)->Unit(benchmark::kMillisecond);

void BM_RigidityPoint(benchmark::State& st) {
  const MechanicalSystem sys = double_pendulum_system(DoublePendulumParams{});
  const std::vector<Vec> pts = {(Vec(3) << 0.3, 0.1, -0.2).finished()};
  for (auto _ : st) benchmark::DoNotOptimize(rigidity_probe(sys, pts, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_RigidityPoint)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
