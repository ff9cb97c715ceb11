#include <benchmark/benchmark.h>

#include "rootstack/ifunctions.hpp"
#include "rootstack/periods.hpp"
#include "rootstack/series.hpp"

namespace {

using namespace rootstack;

TargetSpace p2() { return TargetSpace({2}); }
DivisorArrangement line_conic() { return DivisorArrangement(p2(), {{"L", {1}}, {"C", {2}}}); }

// Product of d linear factors (P + a z) on P2, then inverted factors.
void BM_SeriesMul(benchmark::State& state) {
  auto ctx = p2().make_context(2, 12);
  GradedSeries P = GradedSeries::generator(ctx, 0);
  int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    GradedSeries acc = rising_product(P, 1, d);
    for (int a = 1; a <= d; ++a) acc = acc * invert_z_linear(a, P);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_SeriesMul)->Arg(4)->Arg(16)->Arg(64);

void BM_InfinityExtendedH0(benchmark::State& state) {
  int cap = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(i_infinity_extended_h0(p2(), line_conic(), 2 * cap / 3, cap));
  }
}
BENCHMARK(BM_InfinityExtendedH0)->Arg(6)->Arg(9)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_RootNonextended(benchmark::State& state) {
  int cap = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(i_root_nonextended(p2(), line_conic(), RootData({11, 13}), cap));
  }
}
BENCHMARK(BM_RootNonextended)->Arg(9)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_ClassicalPeriod(benchmark::State& state) {
  int cap = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(classical_period_orbifold(p2(), line_conic(), cap));
  }
}
BENCHMARK(BM_ClassicalPeriod)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_LaurentPeriod(benchmark::State& state) {
  LaurentPolynomial f = LaurentPolynomial::parse("x + y + x^-1*y^-1");
  int cap = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(laurent_classical_period(f, cap));
}
BENCHMARK(BM_LaurentPeriod)->Arg(9)->Arg(30);

}  // namespace

BENCHMARK_MAIN();
