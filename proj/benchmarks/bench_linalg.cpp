#include <benchmark/benchmark.h>

#include "lackawalk/classical.hpp"
#include "lackawalk/graph.hpp"
#include "lackawalk/spectral.hpp"

using namespace lackawalk;

namespace {

void BM_SymmetricEigen(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto g = build_graph(GraphFamilySpec::torus(side, side));
  const Discriminant d(interpolated_matrix(walk_matrix(g), 0, 1.0 - 1.0 / static_cast<double>(g.size())));
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_eigen(d.entries()).values.data());
  state.SetComplexityN(static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_SymmetricEigen)->Arg(8)->Arg(12)->Arg(16)->Arg(24)->Complexity(benchmark::oNCubed);

void BM_ArcTransitivitySearch(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto g = build_graph(GraphFamilySpec::torus(side, side));
  for (auto _ : state) benchmark::DoNotOptimize(is_locally_arc_transitive(g, std::nullopt, g.size()));
}
BENCHMARK(BM_ArcTransitivitySearch)->Arg(3)->Arg(4);

void BM_HittingTimeSolve(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto p = walk_matrix(build_graph(GraphFamilySpec::torus(side, side)));
  for (auto _ : state) benchmark::DoNotOptimize(hitting_time_exact(p, 0));
}
BENCHMARK(BM_HittingTimeSolve)->Arg(8)->Arg(16)->Arg(24);

}  // namespace
