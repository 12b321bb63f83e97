#include <benchmark/benchmark.h>

#include "pqe/engine.hpp"
#include "pqe/generate.hpp"
#include "pqe/mc.hpp"
#include "pqe/sat.hpp"

namespace {

using namespace pqe;

void BM_PqeRandom(benchmark::State& state) {
  gen::PqeParams p;
  p.min_vars = p.max_vars = int(state.range(0));
  p.min_clauses = p.max_clauses = int(state.range(1));
  p.f_to_g = 0.2;
  std::uint64_t seed = 0, nodes = 0;
  for (auto _ : state) {
    auto sol = solve_pqe(gen::random_pqe(seed++ % 64, p));
    nodes += sol.stats.nodes;
    benchmark::DoNotOptimize(sol.f_star);
  }
  state.counters["nodes"] = benchmark::Counter(double(nodes), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_PqeRandom)->Args({8, 20})->Args({12, 30});

// Same instances, whole H = F and G moved out (QE).
void BM_QeRandom(benchmark::State& state) {
  gen::PqeParams p;
  p.min_vars = p.max_vars = int(state.range(0));
  p.min_clauses = p.max_clauses = int(state.range(1));
  p.f_to_g = 0.2;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto prob = gen::random_pqe(seed++ % 64, p);
    CnfFormula h = prob.f;
    for (auto& c : prob.g.clauses) h.clauses.push_back(c);
    benchmark::DoNotOptimize(solve_qe(h, prob.x_vars));
  }
}
BENCHMARK(BM_QeRandom)->Args({8, 20})->Args({12, 30});

void BM_SatByPqe(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto h = gen::random_kcnf(seed++ % 16, int(state.range(0)), int(state.range(1)), 3);
    benchmark::DoNotOptimize(sat::sat_by_pqe(h).sat);
  }
}
BENCHMARK(BM_SatByPqe)->Args({10, 43})->Args({14, 60});

void BM_CounterReach(benchmark::State& state) {
  const int n = int(state.range(0));
  auto ts = gen::counter(n, 0, (1u << n) - 1);
  for (auto _ : state) benchmark::DoNotOptimize(mc::backward_reach(ts, 1000).verdict);
}
BENCHMARK(BM_CounterReach)->Arg(3)->Arg(5);

}  // namespace
BENCHMARK_MAIN();
