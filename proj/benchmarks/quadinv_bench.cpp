#include <benchmark/benchmark.h>

#include "quadinv/covering.hpp"
#include "quadinv/fixtures.hpp"
#include "quadinv/invariants.hpp"
#include "quadinv/pencil_rank.hpp"

namespace {

using namespace quadinv;
using fixtures::circle;
using fixtures::paraboloid;

// Nonzero product vanishing on most of the grid {1..3n+1}^n.
void BM_GridPoly(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Poly p = Poly::constant(n, Rational(1));
  for (int i = 0; i < n; ++i) {
    Poly x = Poly::variable(n, i);
    for (int c = 1; c <= 3; ++c) p = p * (x - Poly::constant(n, Rational(c)));
  }
  for (auto _ : state) benchmark::DoNotOptimize(vanishes_on_grid(p));
}
BENCHMARK(BM_GridPoly)->DenseRange(1, 3);

// Unexpanded identity (a + b)^2 - a^2 - 2ab - b^2, scanned over the full grid.
void BM_GridBlackBox(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Poly a = parse_poly("x1^2 + 1/3*x1", n);
  Poly b = Poly::variable(n, n - 1) * Rational(2);
  auto f = [&](const std::vector<Rational>& x) {
    Rational av = a.eval(x), bv = b.eval(x);
    return Rational((av + bv) * (av + bv) - av * av - 2 * av * bv - bv * bv);
  };
  for (auto _ : state) benchmark::DoNotOptimize(vanishes_on_grid(n, 4, f));
}
BENCHMARK(BM_GridBlackBox)->DenseRange(1, 3);

void BM_RowRank(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  QuadTuple t = paraboloid(d);
  PolyMatrix b(1, d, d);
  for (int j = 0; j < d; ++j) b.at(0, j) = t.forms[0].to_poly().derivative(j);
  for (auto _ : state) benchmark::DoNotOptimize(row_rank(b));
}
BENCHMARK(BM_RowRank)->DenseRange(2, 6, 2);

void BM_DInvariant(benchmark::State& state) {
  QuadTuple t = paraboloid(static_cast<int>(state.range(0)));
  RankSearchOptions opt;
  opt.multistarts = 8;
  for (auto _ : state) benchmark::DoNotOptimize(d_invariant(t, 1, 1, opt, 1));
}
BENCHMARK(BM_DInvariant)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_XTable(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  QuadTuple t = paraboloid(d);
  SliceOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(x_table(t, d + 1, opt, 1));
}
BENCHMARK(BM_XTable)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_CoverCircle(benchmark::State& state) {
  Poly p = circle(Rational(1, 2));
  long samples = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(cover_sublevel(p, 1000, 2, samples, 1));
}
BENCHMARK(BM_CoverCircle)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
