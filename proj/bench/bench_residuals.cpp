// Serial reference vs OpenMP point map, on the full per-instance check and on
// the Grumiller-Jackiw residual alone.
//
//   bench_residuals --benchmark_filter=Verify
//
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "kkforms/catalog.hpp"
#include "kkforms/parallel.hpp"
#include "kkforms/sampling.hpp"
#include "kkforms/suite.hpp"
#include "kkforms/verify.hpp"

using namespace kkforms;

namespace {

SolutionInstance pick(int which) {
  switch (which) {
    case 0: return make_cpx_space_form(3, 1, 1, 8.0);
    case 1: return make_kink_warped(1.0, 3, 1, 1, true);
    default: return make_ckink(2.0, 0.5, 1, 1, true);
  }
}

Exec exec_of(const benchmark::State& state) { return state.range(1) == 0 ? Exec::serial : Exec::parallel; }

void BM_VerifyInstance(benchmark::State& state) {
  const auto inst = pick(static_cast<int>(state.range(0)));
  VerifyOptions opt;
  opt.points = static_cast<int>(state.range(2));
  opt.exec = exec_of(state);
  for (auto _ : state) {
    auto rep = verify_instance(inst, opt);
    benchmark::DoNotOptimize(rep.pass);
  }
  state.SetLabel(inst.label + (opt.exec == Exec::serial ? " serial" : " omp"));
  state.counters["threads"] = opt.exec == Exec::serial ? 1 : omp_get_max_threads();
  state.SetItemsProcessed(state.iterations() * opt.points);
}

void BM_GJResidual(benchmark::State& state) {
  const auto inst = pick(static_cast<int>(state.range(0)));
  const auto pts = sample_points(inst.domain, static_cast<int>(state.range(2)), 42);
  const Exec exec = exec_of(state);
  for (auto _ : state) {
    auto out = map_points<double>(
        pts, [&](const ChartPoint& p) { return gj_residual(inst.g, inst.A, p, inst.eps_d).r_weyl.abs; }, exec);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetLabel(inst.label + (exec == Exec::serial ? " serial" : " omp"));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}

void grid(benchmark::internal::Benchmark* b) {
  for (int inst : {0, 1, 2})
    for (int exec : {0, 1}) b->Args({inst, exec, 200});
}

}  // namespace

BENCHMARK(BM_VerifyInstance)->Apply(grid)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GJResidual)->Apply(grid)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
