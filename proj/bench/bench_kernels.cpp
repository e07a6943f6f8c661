// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "efalloc/compact.hpp"
#include "efalloc/deciders.hpp"
#include "efalloc/gen.hpp"
#include "efalloc/solvers.hpp"

using namespace efalloc;

namespace {

Instance compact_instance(std::size_t n, std::size_t m, unsigned ties) {
  RandomParams p;
  p.model = Model::Compact;
  p.agents = n;
  p.houses = m;
  p.tie_percent = ties;
  p.seed = 1;
  return gen_random(p);
}

Instance lottery_instance(std::size_t n, std::size_t m) {
  RandomParams p;
  p.model = Model::Lottery;
  p.agents = n;
  p.houses = m;
  p.support = 3;
  p.seed = 1;
  return gen_random(p);
}

// Arg 0 = serial reference, k > 0 = parallel with k threads.
void BM_Enumerate(benchmark::State& state, const Instance& inst) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = threads == 0 ? solve_max_prob_ef_enumerate_serial(inst)
                          : solve_max_prob_ef_enumerate_parallel(inst, threads);
    benchmark::DoNotOptimize(r);
  }
}

void BM_EnumerateLottery(benchmark::State& state) {
  static const Instance inst = lottery_instance(6, 12);
  BM_Enumerate(state, inst);
}

void BM_EnumerateCompact30(benchmark::State& state) {
  // two tie classes keep OPT above zero, so no subset is skipped early
  static const Instance inst = [] {
    RandomParams p;
    p.model = Model::Compact;
    p.agents = 30;
    p.houses = 32;
    p.class_sizes = {16, 16};
    p.seed = 1;
    return gen_random(p);
  }();
  BM_Enumerate(state, inst);
}

void BM_CompactEpsilon(benchmark::State& state) {
  static const Instance inst = compact_instance(6, 8, 50);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = threads == 0 ? max_prob_ef_compact_serial(inst.compact(), Prob(1, 3))
                          : max_prob_ef_compact_parallel(inst.compact(), Prob(1, 3), threads);
    benchmark::DoNotOptimize(r);
  }
}

void BM_ExhaustiveCertain(benchmark::State& state) {
  static const Instance inst = lottery_instance(7, 9);
  DecideOptions opts;
  opts.exec.threads = static_cast<int>(state.range(0)) == 0 ? 1 : static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_certainly_ef(inst, opts));
}

}  // namespace

BENCHMARK(BM_EnumerateLottery)->Arg(0)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateCompact30)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_CompactEpsilon)->Arg(0)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExhaustiveCertain)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
