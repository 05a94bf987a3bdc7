#include <benchmark/benchmark.h>

#include <random>

#include "skewfatou/classify.hpp"
#include "skewfatou/current_link.hpp"
#include "skewfatou/potential.hpp"
#include "skewfatou/roots.hpp"
#include "skewfatou/sets.hpp"

using namespace skewfatou;

namespace {

SkewProduct example_9_6() {
  return SkewProduct(2, Poly1({-6.0, 0.0, 1.0}), FiberPoly({{0, 2, 1.0}, {0, 0, 3.0}, {1, 0, -1.0}}));
}

std::vector<Complex> random_points(int n, double box, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-box, box);
  std::vector<Complex> pts;
  for (int i = 0; i < n; ++i) pts.emplace_back(u(rng), u(rng));
  return pts;
}

void BM_GreenBase(benchmark::State& state) {
  const PotentialEvaluator pot(example_9_6());
  const auto pts = random_points(1024, 4.0, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pot.green_base(pts[i++ & 1023]).value);
  }
}
BENCHMARK(BM_GreenBase);

void BM_GreenFull(benchmark::State& state) {
  const PotentialEvaluator pot(example_9_6());
  const auto zs = random_points(1024, 3.0, 2), ws = random_points(1024, 3.0, 3);
  std::size_t i = 0;
  for (auto _ : state) {
    const std::size_t k = i++ & 1023;
    benchmark::DoNotOptimize(pot.green_full(zs[k], ws[k]).value);
  }
}
BENCHMARK(BM_GreenFull);

// Bounded orbits run the full budget.
void BM_InFiberBounded(benchmark::State& state) {
  const SkewProduct sp(2, Poly1({0.0, 0.0, 1.0}), FiberPoly({{0, 2, 1.0}, {0, 0, -1.0}}));
  const PotentialEvaluator pot(sp, escape_params(sp, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(pot.in_fiber(Complex(0.3, 0.2), 0.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_InFiberBounded)->Arg(256)->Arg(1000);

void BM_Roots(benchmark::State& state) {
  const auto r = random_points(static_cast<int>(state.range(0)), 2.0, 4);
  const Poly1 p = from_roots(r);
  for (auto _ : state) benchmark::DoNotOptimize(roots(p));
}
BENCHMARK(BM_Roots)->Arg(2)->Arg(4)->Arg(16)->Arg(64);

void BM_SampleJulia(benchmark::State& state) {
  const Poly1 p({Complex(-0.12, 0.75), 0.0, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(sample_julia(p, static_cast<int>(state.range(0)), 24, 1, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleJulia)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_ClosestPair(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PointCloud a(Ambient::BasePlane, {}, random_points(n, 1.0, 5));
  const PointCloud b(Ambient::BasePlane, {}, random_points(n, 1.0, 6));
  for (auto _ : state) benchmark::DoNotOptimize(closest_pair(a, b).distance);
}
BENCHMARK(BM_ClosestPair)->Arg(4096)->Arg(65536)->Unit(benchmark::kMillisecond);

void BM_ClassifyConnectivity(benchmark::State& state) {
  const SkewProduct sp = example_9_6();
  ClassifyConfig cfg;
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(classify_connectivity(sp, cfg).verdict);
}
BENCHMARK(BM_ClassifyConnectivity)->Unit(benchmark::kMillisecond);

void BM_AxiomA(benchmark::State& state) {
  const SkewProduct sp = example_9_6();
  AxiomAConfig cfg;
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(axiom_a_check(sp, cfg).verdict);
}
BENCHMARK(BM_AxiomA)->Unit(benchmark::kMillisecond);

void BM_HarmonicMeasure(benchmark::State& state) {
  const Poly1 p({0.0, 0.0, 1.0});
  MeasureOptions opt;
  opt.n = static_cast<int>(state.range(0));
  opt.threads = 1;
  for (auto _ : state) {
    Region quarter = Region::polygon({0.0, 1.5, Complex(1.5, 1.5), Complex(0.0, 1.5)});
    benchmark::DoNotOptimize(harmonic_measure(p, quarter, opt).value);
  }
}
BENCHMARK(BM_HarmonicMeasure)->Arg(4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
