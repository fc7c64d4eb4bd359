#include <benchmark/benchmark.h>

#include <random>

#include "symrig/cauchy_green.hpp"
#include "symrig/cr_solver.hpp"
#include "symrig/disc_area.hpp"
#include "symrig/linear_geometry.hpp"

using namespace symrig;

static void BM_CauchyGreen(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CauchyGreen plan(n, 2 * n);
  std::vector<Cx> g(plan.grid().size());
  for (int i = 0; i < plan.grid().n_r(); ++i)
    for (int j = 0; j < plan.grid().n_theta(); ++j) g[plan.grid().index(i, j)] = std::exp(plan.grid().node(i, j));
  for (auto _ : state) benchmark::DoNotOptimize(plan.apply(g));
}
BENCHMARK(BM_CauchyGreen)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_SolveDiscBump(benchmark::State& state) {
  ComplexLinearMap dir(2, 2);
  dir << 1.0, 0.5, Cx(0, 0.5), 0.5;
  dir /= operator_norm(dir);
  const MatrixField bump = MatrixField::bump(dir, 0.3, CxVector::Zero(2), 0.5);
  SolverConfig cfg;
  cfg.n_r = static_cast<int>(state.range(0));
  cfg.n_theta = 2 * cfg.n_r;
  for (auto _ : state) benchmark::DoNotOptimize(solve_disc(bump, CxVector::Zero(2), 0, cfg));
}
BENCHMARK(BM_SolveDiscBump)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_ClipArea(benchmark::State& state) {
  const ParamDisc u = ParamDisc::holomorphic(
      2, [](Cx z) { return CxVector::Constant(2, 2.0 * z + z * z); },
      [](Cx z) { return CxVector::Constant(2, 2.0 + 2.0 * z); });
  const Domain g = Domain::unit_polydisc(2);
  for (auto _ : state) benchmark::DoNotOptimize(clip_area(u, g));
}
BENCHMARK(BM_ClipArea)->Unit(benchmark::kMillisecond);

static void BM_Classify(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<RealLinearMap> samples;
  for (int k = 0; k < 64; ++k) samples.push_back(haar_orthogonal(4, rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(classify_orthogonal(samples[i++ % samples.size()]));
}
BENCHMARK(BM_Classify);
BENCHMARK_MAIN();
