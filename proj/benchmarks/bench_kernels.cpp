#include <benchmark/benchmark.h>

#include "asck/catalog.hpp"
#include "asck/congruence.hpp"
#include "asck/decision.hpp"
#include "asck/structure.hpp"
#include "asck/variety.hpp"

using namespace asck;

static void BM_FreeClosureMonadic(benchmark::State& state) {
  auto K = make_variety({s_l(2)});
  for (auto _ : state) {
    auto F = free_algebra(K, 1);
    benchmark::DoNotOptimize(F.size());
  }
}
BENCHMARK(BM_FreeClosureMonadic);

static void BM_FreeClosureJoin(benchmark::State& state) {
  auto K = make_variety({complex_closure(lev_poset(2)), s_l(2)});
  for (auto _ : state) {
    auto F = free_algebra(K, 1);
    benchmark::DoNotOptimize(F.size());
  }
}
BENCHMARK(BM_FreeClosureJoin);

static void BM_HomSearchEmbedding(benchmark::State& state) {
  auto K = make_variety({s_l(2)});
  auto F = free_algebra(K, 1);
  auto SxC = product2(s_l(2), two()).algebra;
  HomQuery q;
  q.mode = HomMode::Injective;
  for (auto _ : state) {
    auto r = homs(SxC, F.ops(), q);
    benchmark::DoNotOptimize(r.status);
  }
}
BENCHMARK(BM_HomSearchEmbedding);

static void BM_HomEnumerationAll(benchmark::State& state) {
  auto sq = product2(four(), four()).algebra;
  HomQuery q;
  q.mode = HomMode::All;
  for (auto _ : state) {
    auto r = homs(sq, four(), q);
    benchmark::DoNotOptimize(r.homs.size());
  }
}
BENCHMARK(BM_HomEnumerationAll);

static void BM_PrincipalCongruence(benchmark::State& state) {
  auto sq = product2(four(), four()).algebra;
  for (auto _ : state) {
    for (int a = 0; a < sq.size(); ++a)
      benchmark::DoNotOptimize(principal_congruence(sq, a, (a + 1) % sq.size()));
  }
}
BENCHMARK(BM_PrincipalCongruence);

static void BM_CongruenceLattice(benchmark::State& state) {
  auto sq = product2(four(), four()).algebra;
  for (auto _ : state) {
    auto lat = all_congruences(sq);
    benchmark::DoNotOptimize(lat.elems.size());
  }
}
BENCHMARK(BM_CongruenceLattice);

static void BM_UpsetHeyting(benchmark::State& state) {
  Poset p = lev_poset(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto h = upset_heyting(p);
    benchmark::DoNotOptimize(h.size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_UpsetHeyting)->Arg(2)->Arg(3)->Arg(4);

static void BM_AscCheckMonadic(benchmark::State& state) {
  auto K = make_variety({s_l(2)});
  for (auto _ : state) {
    auto v = asc_check(K);
    benchmark::DoNotOptimize(v.status);
  }
}
BENCHMARK(BM_AscCheckMonadic);

static void BM_NonEmbedding4sq(benchmark::State& state) {
  Caps caps;
  caps.rank_max = 1;
  for (auto _ : state) {
    auto v = non_embedding_suite("closure-4sq", caps);
    benchmark::DoNotOptimize(v.status);
  }
}
BENCHMARK(BM_NonEmbedding4sq);

BENCHMARK_MAIN();
