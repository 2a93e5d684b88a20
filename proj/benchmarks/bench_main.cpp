#include <benchmark/benchmark.h>

#include "soq/branching.hpp"
#include "soq/ktheory.hpp"
#include "soq/qlimit.hpp"
#include "soq/repbuilder.hpp"
#include "soq/weyl.hpp"

using namespace soq;

namespace {

void BM_FrtElementary(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const QParams p = make_params(0.5);
  const RMatrixData R = build_rmatrix(N, p.q);
  const RepMatrix rep = build_elementary(type_from_N(N), rank_from_N(N), 1, p.q);
  for (auto _ : state) benchmark::DoNotOptimize(check_frt(rep, R, p));
}
BENCHMARK(BM_FrtElementary)->Arg(4)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_FrtOmega(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const LieType t = type_from_N(N);
  const int n = rank_from_N(N);
  const QParams p = make_params(0.5);
  const RMatrixData R = build_rmatrix(N, p.q);
  const RepMatrix rep = build_pi(t, n, omega_k(t, n, 3), single_circle_degrees(n), p.q);
  for (auto _ : state) benchmark::DoNotOptimize(check_frt(rep, R, p));
}
BENCHMARK(BM_FrtOmega)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_TrivialBranching(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto weights = dominant_weights(N, 6);
  for (auto _ : state) {
    long sum = 0;
    for (const auto& a : weights) sum += multiplicity({N, a, std::vector<int>(N / 2 - 1, 0)});
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(BM_TrivialBranching)->DenseRange(4, 9);

void BM_Winding(benchmark::State& state) {
  const LaurentOp u = build_uk(static_cast<int>(state.range(0)), make_params(0.5, 8, 3));
  for (auto _ : state) benchmark::DoNotOptimize(winding(u));
}
BENCHMARK(BM_Winding)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_SeriesIdentity(benchmark::State& state) {
  const QParams p = make_params(0.5);
  const LimitPair pr = build_limit_pair(LimitFamily::D4, 0, 3, p);
  const int L = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_identity("D4-X2q-series", pr, L, p));
}
BENCHMARK(BM_SeriesIdentity)->Arg(4)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
