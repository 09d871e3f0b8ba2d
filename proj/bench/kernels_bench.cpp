#include <benchmark/benchmark.h>

#include "mwcs/compact_graph.hpp"
#include "mwcs/formulation.hpp"
#include "mwcs/generators.hpp"
#include "mwcs/oracle.hpp"

namespace {

using namespace mwcs;

CompactGraph sample_graph(int n, double p, std::uint64_t seed) {
  Rng rng(seed);
  return induce_all(erdos_renyi(n, p, -10, 10, rng)).graph;
}

FractionalPoint sample_point(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FractionalPoint pt;
  pt.x.resize(n);
  pt.y.assign(n, 0.0);
  for (double& x : pt.x) x = u(rng);
  double total = 0.0;
  for (int v = 0; v < n; ++v) total += pt.x[v];
  for (int v = 0; v < n; ++v) pt.y[v] = pt.x[v] / total;
  return pt;
}

void BM_OracleSerial(benchmark::State& state) {
  auto g = sample_graph(static_cast<int>(state.range(0)), 0.3, 7);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_subsets_serial(g).objective);
}

void BM_OracleParallel(benchmark::State& state) {
  auto g = sample_graph(static_cast<int>(state.range(0)), 0.3, 7);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_subsets(g).objective);
}

void BM_SeparationSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto g = sample_graph(n, 8.0 / n, 11);
  auto pt = sample_point(n, 12);
  for (auto _ : state) benchmark::DoNotOptimize(separate_fractional_serial(g, pt).size());
}

void BM_SeparationParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto g = sample_graph(n, 8.0 / n, 11);
  auto pt = sample_point(n, 12);
  for (auto _ : state) benchmark::DoNotOptimize(separate_fractional(g, pt).size());
}

}  // namespace

BENCHMARK(BM_OracleSerial)->Arg(16)->Arg(20);
BENCHMARK(BM_OracleParallel)->Arg(16)->Arg(20);
BENCHMARK(BM_SeparationSerial)->Arg(100)->Arg(400);
BENCHMARK(BM_SeparationParallel)->Arg(100)->Arg(400);

BENCHMARK_MAIN();
