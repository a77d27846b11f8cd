#include <ramfield/formal_group.hpp>
#include <ramfield/galois.hpp>
#include <ramfield/gr_solver.hpp>
#include <ramfield/series.hpp>
#include <ramfield/tower_builder.hpp>

#include <benchmark/benchmark.h>

using namespace ramfield;

static void BM_GroupLaw(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_group_law(p, 4 * p, 20));
}
BENCHMARK(BM_GroupLaw)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_Reversion(benchmark::State& state) {
    const int p = 5, prec = 10, ihi = static_cast<int>(state.range(0));
    XSeries R(p, prec, XKind::nonneg);
    R.set(0, Laurent::monomial(p, prec, 1, 1));
    for (int i = 1; i <= ihi; ++i) R.set(i, Laurent::monomial(p, prec, i % 3 - 1, 7 * i + 1));
    for (auto _ : state) benchmark::DoNotOptimize(xseries_reversion(R, ihi));
}
BENCHMARK(BM_Reversion)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_VerifyBuiltin(benchmark::State& state) {
    const GRPair pair = builtin_gr_p2(5);
    for (auto _ : state) benchmark::DoNotOptimize(verify_gr(pair));
}
BENCHMARK(BM_VerifyBuiltin)->Unit(benchmark::kMillisecond);

static void BM_SolveGr(benchmark::State& state) {
    const int prec = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(solve_gr(5, prec, -3, 2));
}
BENCHMARK(BM_SolveGr)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_BuildTower(benchmark::State& state) {
    TowerSpec s;
    s.p = 5;
    s.n = 2;
    s.d = 2;
    s.prec = state.range(0);
    s.source = TowerSource::explicit_p2;
    for (auto _ : state) benchmark::DoNotOptimize(build_tower(s));
}
BENCHMARK(BM_BuildTower)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_LevelOneAutomorphisms(benchmark::State& state) {
    TowerSpec s;
    s.p = 5;
    s.n = 1;
    s.d = 2;
    s.prec = state.range(0);
    s.source = TowerSource::explicit_p2;
    const BuiltTower bt = build_tower(s);
    for (auto _ : state) benchmark::DoNotOptimize(automorphism_table(bt.tower));
}
BENCHMARK(BM_LevelOneAutomorphisms)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
