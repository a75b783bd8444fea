#include <benchmark/benchmark.h>

#include "obslab/canonical.hpp"
#include "obslab/detectors.hpp"
#include "obslab/extractors.hpp"
#include "obslab/generators.hpp"
#include "obslab/treewidth.hpp"

namespace obslab {
namespace {

// Wall of height t; the line graph doubles the order.
void BM_EvenHoleWall(benchmark::State& state) {
  const Graph g = wall({static_cast<int>(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(find_even_hole(g, DetectorOptions{256}));
  state.counters["n"] = g.order();
}
BENCHMARK(BM_EvenHoleWall)->DenseRange(2, 5);

void BM_MembershipRandom(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = grow_random_graph(n, 0.3, 7, [](const Graph& h) { return !find_even_hole(h); });
  for (auto _ : state) benchmark::DoNotOptimize(membership_E_t(g, 4));
}
BENCHMARK(BM_MembershipRandom)->Arg(10)->Arg(16)->Arg(24);

void BM_TreewidthExact(benchmark::State& state) {
  const Graph g = k_tree_random(3, static_cast<int>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(treewidth_exact(g).width);
}
BENCHMARK(BM_TreewidthExact)->DenseRange(10, 20, 5)->Unit(benchmark::kMillisecond);

void BM_TreewidthUpper(benchmark::State& state) {
  const Graph g = wall({static_cast<int>(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(tw_upper(g).width);
}
BENCHMARK(BM_TreewidthUpper)->RangeMultiplier(2)->Range(4, 16);

void BM_Enumerate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  long long seen = 0;
  for (auto _ : state) enumerate_graphs(n, nullptr, [&](const Graph&) { ++seen; });
  state.counters["graphs"] = benchmark::Counter(static_cast<double>(seen), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_Enumerate)->DenseRange(5, 7)->Unit(benchmark::kMillisecond);

void BM_PhantomToCrystal(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const auto pp = plant_phantom(complete(2), 2, r, 3);
  for (auto _ : state) benchmark::DoNotOptimize(phantom_to_crystal(pp.graph, pp.phantom, 1, 1).variant());
  state.counters["n"] = pp.graph.order();
}
BENCHMARK(BM_PhantomToCrystal)->DenseRange(0, 3);

}  // namespace
}  // namespace obslab

BENCHMARK_MAIN();
