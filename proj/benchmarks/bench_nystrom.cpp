#include <benchmark/benchmark.h>

#include "twolayer/nystrom.hpp"
#include "twolayer/potentials.hpp"
#include "twolayer/remainder_table.hpp"

using namespace twolayer;

namespace {

BoundaryProblem example1() {
  return BoundaryProblem::dirichlet(MediumPair(2.7, 3.5), SurfaceProfile::builtin("gamma1"), PointSource{{1.0, -1.3}});
}

void BM_RemainderTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g(n);
  for (auto _ : state) {
    RemainderTable t(MediumPair(2.7, 3.5), g.h(), g.size(), -2.6, -1.4, {}, 1);
    benchmark::DoNotOptimize(t.at(3, -2.0));
  }
}
BENCHMARK(BM_RemainderTable)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
  const BoundaryProblem p = example1();
  const Grid g(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(p, g, AssemblyOptions{1}).matrix(0, 0));
}
BENCHMARK(BM_Assemble)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const LinearSystem sys = assemble(example1(), Grid(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(solve(sys).values(0));
}
BENCHMARK(BM_Solve)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_FieldPoint(benchmark::State& state) {
  const BoundaryProblem p = example1();
  const DensitySolution sol = solve(assemble(p, Grid(8)));
  for (auto _ : state) benchmark::DoNotOptimize(eval_scattered(sol, p, {0.6, 0.56}, FieldOptions{1}));
}
BENCHMARK(BM_FieldPoint)->Unit(benchmark::kMillisecond);

}  // namespace
