#include <benchmark/benchmark.h>

#include "torocolor/hardness.hpp"
#include "torocolor/oracle.hpp"
#include "torocolor/solver.hpp"
#include "torocolor/torus.hpp"

using namespace toro;

namespace {

void BM_column_sweep(benchmark::State& state) {
  Torus G = build_torus(4, static_cast<int>(state.range(0)), 1);
  ListAssignment L = random_assignment(G.n, 5, 10, 1);
  for (auto _ : state) {
    SolveOutcome out = solve_case1(G, L);
    benchmark::DoNotOptimize(out.total_touches);
  }
  state.SetItemsProcessed(state.iterations() * G.n);
  state.SetComplexityN(G.n);
}
BENCHMARK(BM_column_sweep)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oN);

void BM_single_row(benchmark::State& state) {
  Torus G = build_torus(1, static_cast<int>(state.range(0)), 2);
  ListAssignment L = random_assignment(G.n, 5, 10, 2);
  for (auto _ : state) {
    SolveOutcome out = solve_case2(G, L);
    benchmark::DoNotOptimize(out.total_touches);
  }
  state.SetItemsProcessed(state.iterations() * G.n);
  state.SetComplexityN(G.n);
}
BENCHMARK(BM_single_row)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oN);

void BM_diamond_schedule(benchmark::State& state) {
  Torus G = build_torus(2, static_cast<int>(state.range(0)), 2);
  ListAssignment L = random_assignment(G.n, 5, 10, 3);
  for (auto _ : state) {
    SolveOutcome out = solve_case3(G, L);
    benchmark::DoNotOptimize(out.total_touches);
  }
  state.SetItemsProcessed(state.iterations() * G.n);
  state.SetComplexityN(G.n);
}
BENCHMARK(BM_diamond_schedule)->Arg(100)->Arg(1000)->Arg(10000)->Complexity(benchmark::oN);

void BM_oracle_small(benchmark::State& state) {
  Torus G = build_torus(4, 3, 1);
  AdjLists adj = to_adj_lists(G);
  ListAssignment L = random_assignment(G.n, 5, 10, 4);
  for (auto _ : state) {
    OracleResult res = is_L_colorable(adj, L.lists, 100000000);
    benchmark::DoNotOptimize(res.stats.nodes);
  }
}
BENCHMARK(BM_oracle_small);

void BM_hardness_refute(benchmark::State& state) {
  Torus G = build_torus(2, 6, 2);
  auto H = hard_assignment(G);
  for (auto _ : state) {
    HardnessReport rep = verify_hardness(G, H->lists, 10000000);
    benchmark::DoNotOptimize(rep.nodes);
  }
}
BENCHMARK(BM_hardness_refute);

}  // namespace

BENCHMARK_MAIN();
