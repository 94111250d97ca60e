#include <benchmark/benchmark.h>

#include "potspec/analytic_spectra.hpp"
#include "potspec/bessel.hpp"
#include "potspec/discretization.hpp"
#include "potspec/domains.hpp"
#include "potspec/eigensolve.hpp"

using namespace potspec;

static void BM_BesselZeros(benchmark::State& state) {
    const int count = static_cast<int>(state.range(0));
    double nu = 0.5;
    for (auto _ : state) {
        // fresh order each pass so the memo cache does not hide the work
        nu += 1e-7;
        benchmark::DoNotOptimize(bessel::zero_values(bessel::Order(nu), count));
    }
}
BENCHMARK(BM_BesselZeros)->Arg(10)->Arg(60)->Arg(240);

static void BM_RayleighSums(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(bessel::rayleigh_sums(bessel::Order(12.5), 10));
}
BENCHMARK(BM_RayleighSums);

static void BM_AnalyticNewtonHS(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(analytic::newton_ball3_schatten(2.0).value);
}
BENCHMARK(BM_AnalyticNewtonHS)->Unit(benchmark::kMillisecond);

static void BM_AnalyticLogDisc3(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(analytic::log_disc_schatten(3.0).value);
}
BENCHMARK(BM_AnalyticLogDisc3)->Unit(benchmark::kMillisecond);

static void BM_AssembleLog2D(benchmark::State& state) {
    const Mesh m = make_mesh(Domain::disc(1.0), 1.0 / static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(assemble(m, OperatorKind::Log2D).size());
    state.counters["n"] = static_cast<double>(m.size());
}
BENCHMARK(BM_AssembleLog2D)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_AssembleNewton3D(benchmark::State& state) {
    const Mesh m = make_mesh(Domain::ball(1.0), 1.0 / static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(assemble(m, OperatorKind::Newton3D).size());
    state.counters["n"] = static_cast<double>(m.size());
}
BENCHMARK(BM_AssembleNewton3D)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_Decompose(benchmark::State& state) {
    const KernelMatrix a =
        assemble(make_mesh(Domain::disc(1.0), 1.0 / static_cast<double>(state.range(0))), OperatorKind::Log2D);
    const auto backend = state.range(1) == 0 ? EigenBackend::Jacobi : EigenBackend::Tridiagonal;
    for (auto _ : state) benchmark::DoNotOptimize(decompose(a, state.range(2) != 0, backend).eigenvalues.data());
    state.counters["n"] = static_cast<double>(a.size());
}
BENCHMARK(BM_Decompose)
    ->Args({5, 0, 0})
    ->Args({5, 1, 0})
    ->Args({8, 0, 0})
    ->Args({8, 1, 0})
    ->Args({20, 1, 0})
    ->Args({20, 1, 1})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
