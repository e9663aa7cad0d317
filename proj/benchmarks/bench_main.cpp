#include <benchmark/benchmark.h>

#include "extremal/point_count.hpp"
#include "extremal/prime_scan.hpp"
#include "extremal/st_approx.hpp"

using namespace extremal;

namespace {

// Largest prime below 2^k for a few k.
u64 prime_below(u64 n) { return primes_in_range(n > 2000 ? n - 2000 : 2, n).back(); }

void BM_CountPointsBsgs(benchmark::State& state) {
  const u64 p = prime_below(u64{1} << state.range(0));
  const auto curve = reduce_mod_p(CurveQ(1, 1), p);
  for (auto _ : state) benchmark::DoNotOptimize(count_points_bsgs(curve));
}
BENCHMARK(BM_CountPointsBsgs)->Arg(20)->Arg(30)->Arg(40);

void BM_CountPointsNaive(benchmark::State& state) {
  const u64 p = prime_below(u64{1} << state.range(0));
  const auto curve = reduce_mod_p(CurveQ(1, 1), p);
  for (auto _ : state) benchmark::DoNotOptimize(count_points_naive(curve));
}
BENCHMARK(BM_CountPointsNaive)->Arg(10)->Arg(14)->Arg(18);

void BM_Sieve(benchmark::State& state) {
  const u64 hi = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(primes_in_range(2, hi));
}
BENCHMARK(BM_Sieve)->Arg(1'000'000)->Arg(10'000'000);

void BM_Scan(benchmark::State& state) {
  const CurveQ curve(1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(scan(curve, 2, 1'000'000, {false, 1, kDefaultChunk}));
}
BENCHMARK(BM_Scan)->Unit(benchmark::kMillisecond);

void BM_Majorant(benchmark::State& state) {
  const Interval I(0.3, 1.1);
  const int M = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(majorant(I, M));
}
BENCHMARK(BM_Majorant)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
