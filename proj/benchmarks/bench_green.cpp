#include <benchmark/benchmark.h>

#include "twolayer/green.hpp"
#include "twolayer/specfun.hpp"

using namespace twolayer;

namespace {

const MediumPair kMed(2.7, 3.5);

void BM_Hankel(benchmark::State& state) {
  double z = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::hankel1(0, z));
    z = z < 50.0 ? z * 1.01 : 0.1;
  }
}
BENCHMARK(BM_Hankel);

// Both points below the interface, as in the boundary integral equations.
void BM_GreenBelow(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(green(kMed, {0.0, -0.9}, {1.3, -1.1}));
}
BENCHMARK(BM_GreenBelow);

// Across the interface, as in field evaluation above the surface.
void BM_GreenAcross(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(green(kMed, {0.6, 0.56}, {1.0, -1.3}));
}
BENCHMARK(BM_GreenAcross);

void BM_GreenFull(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(green_full(kMed, {0.0, -0.9}, {1.3, -1.1}));
}
BENCHMARK(BM_GreenFull);

void BM_RemainderFull(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(remainder_full(kMed, 1.3, -2.0));
}
BENCHMARK(BM_RemainderFull);

}  // namespace
