#include <benchmark/benchmark.h>

#include "hts/criteria.hpp"
#include "hts/oracle.hpp"
#include "hts/realize.hpp"

namespace {

using namespace hts;

// Six parts of eight vertices, arity one: 9^6 prefix tuples, 8^6 arcs.
const Shape& sweep_shape() {
  static const Shape s = Shape::make({8, 8, 8, 8, 8, 8}, {1, 1, 1, 1, 1, 1});
  return s;
}

const ScoreLists& sweep_lists() {
  static const ScoreLists lists = losing_scores(random_hypertournament(sweep_shape(), 1));
  return lists;
}

void BM_CheckReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(check_losing_lists_reference(sweep_shape(), sweep_lists()));
}
BENCHMARK(BM_CheckReference)->Unit(benchmark::kMillisecond);

void BM_CheckSweep(benchmark::State& state) {
  const CheckOptions opts{.prune = state.range(0) != 0, .jobs = static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(check_losing_lists(sweep_shape(), sweep_lists(), opts));
}
BENCHMARK(BM_CheckSweep)
    ->ArgNames({"prune", "jobs"})
    ->ArgsProduct({{0, 1}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond);

void BM_Enumerate(benchmark::State& state) {
  const Shape s = Shape::make({3, 2, 2}, {1, 1, 1});
  const auto jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    if (jobs == 0)
      benchmark::DoNotOptimize(achievable_lists_serial(s, ListKind::losing));
    else
      benchmark::DoNotOptimize(achievable_losing_lists(s, {kDefaultEnumerationBudget, jobs}));
  }
}
// jobs = 0 runs the serial reference.
BENCHMARK(BM_Enumerate)->ArgName("jobs")->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

const Hypertournament& tally_witness() {
  static const Hypertournament m = random_hypertournament(Shape::make({10, 8, 6}, {3, 2, 2}), 5);
  return m;
}

void BM_TallySerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(losing_by_vertex_serial(tally_witness()));
}
BENCHMARK(BM_TallySerial)->Unit(benchmark::kMicrosecond);

void BM_Tally(benchmark::State& state) {
  const auto jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(losing_by_vertex(tally_witness(), jobs));
}
BENCHMARK(BM_Tally)->ArgName("jobs")->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_Realize(benchmark::State& state) {
  const Shape s = Shape::make({6, 5, 4}, {2, 2, 1});
  const auto r = losing_scores(random_hypertournament(s, 9));
  const bool flow = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(flow ? realize_flow(s, r) : realize_inductive(s, r));
}
BENCHMARK(BM_Realize)->ArgName("flow")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
