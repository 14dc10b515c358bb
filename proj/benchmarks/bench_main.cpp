#include <benchmark/benchmark.h>

#include "tautkit/dp.hpp"
#include "tautkit/gadgets.hpp"
#include "tautkit/layout.hpp"
#include "tautkit/sat.hpp"
#include "tautkit/skeleton.hpp"
#include "tautkit/taut.hpp"
#include "tautkit/treedec.hpp"

namespace {

using namespace tautkit;

Triangulation figure_eight() {
  Triangulation tri(2);
  tri.set_gluing(0, 0, 1, {1, 2, 0});
  tri.set_gluing(0, 1, 1, {3, 0, 1});
  tri.set_gluing(0, 2, 1, {3, 0, 2});
  tri.set_gluing(0, 3, 1, {2, 3, 1});
  return tri;
}

SatInstance chain_instance(int length) {
  SatInstance inst;
  inst.variable_count = 2 * length + 1;
  for (int i = 0; i < length; ++i)
    inst.clauses.push_back({i, i + 1, length + 1 + i});
  return inst;
}

void BM_ComputeSkeleton(benchmark::State& state) {
  Triangulation tri =
      reduce_sat(chain_instance(static_cast<int>(state.range(0)))).tri;
  for (auto _ : state) benchmark::DoNotOptimize(compute_skeleton(tri));
  state.SetComplexityN(tri.tet_count());
}
BENCHMARK(BM_ComputeSkeleton)->Arg(5)->Arg(10)->Arg(20)->Complexity();

void BM_EnumerateForkGadget(benchmark::State& state) {
  GadgetBlock fork = build_fork_gadget();
  Skeleton skel = compute_skeleton(fork.tri);
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_taut(fork.tri, skel));
}
BENCHMARK(BM_EnumerateForkGadget);

void BM_SolveCutwidthFig8(benchmark::State& state) {
  Triangulation tri = figure_eight();
  Skeleton skel = compute_skeleton(tri);
  Layout layout = heuristic_layout(build_fpg(tri));
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_cutwidth(tri, skel, layout));
}
BENCHMARK(BM_SolveCutwidthFig8);

void BM_SolveTreewidthChain(benchmark::State& state) {
  Triangulation tri =
      reduce_sat(chain_instance(static_cast<int>(state.range(0)))).tri;
  Skeleton skel = compute_skeleton(tri);
  TreeDecomposition td = heuristic_treedec(build_fpg(tri));
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_treewidth(tri, skel, td));
  state.SetComplexityN(tri.tet_count());
}
BENCHMARK(BM_SolveTreewidthChain)->Arg(5)->Arg(10)->Arg(20)->Complexity();

}  // namespace

BENCHMARK_MAIN();
