#include <benchmark/benchmark.h>

#include "lackawalk/classical.hpp"
#include "lackawalk/coined_walk.hpp"
#include "lackawalk/szegedy.hpp"

using namespace lackawalk;

namespace {

void BM_CoinedStep(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const MarkedInstance inst(build_graph(GraphFamilySpec::torus(side, side)), 0);
  const LackadaisicalWalk walk(inst, CoinConfig::standard(inst));
  CoinState psi = walk.initial_state();
  for (auto _ : state) {
    walk.step(psi);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(walk.dimension()));
}
BENCHMARK(BM_CoinedStep)->Arg(16)->Arg(64)->Arg(256);

void BM_SymmetricOracleStep(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const MarkedInstance inst(build_graph(GraphFamilySpec::torus(side, side)), 0);
  const LackadaisicalWalk walk(inst, CoinConfig::standard(inst));
  CoinState psi = walk.initial_state();
  for (auto _ : state) {
    walk.step_symmetric_oracle(psi);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(walk.dimension()));
}
BENCHMARK(BM_SymmetricOracleStep)->Arg(16)->Arg(64)->Arg(256);

void BM_SzegedyStep(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto g = build_graph(GraphFamilySpec::torus(side, side));
  const double n = static_cast<double>(g.size());
  const SzegedyWalk walk(lazy_interpolated_matrix(g, 0, 4.0 / n, 1.0 - 1.0 / n));
  EdgeState psi = walk.initial_state(Distribution::uniform_unmarked(g.size(), 0));
  for (auto _ : state) {
    walk.step(psi);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(walk.dimension()));
}
BENCHMARK(BM_SzegedyStep)->Arg(16)->Arg(32)->Arg(48);

}  // namespace
