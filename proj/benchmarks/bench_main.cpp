#include <benchmark/benchmark.h>

#include "logbesov/besov.hpp"
#include "logbesov/inflation.hpp"
#include "logbesov/littlewood_paley.hpp"
#include "logbesov/navier_stokes.hpp"
#include "logbesov/path_norms.hpp"
#include "logbesov/sparse.hpp"

using namespace logbesov;

static void BM_Transform(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const int N = static_cast<int>(st.range(1));
    const SpectralField u = random_divfree(make_grid(n, N), N / 4, 1.0, 7);
    for (auto _ : st) benchmark::DoNotOptimize(to_physical(u));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(u.points()) * u.components());
}
BENCHMARK(BM_Transform)->Args({2, 256})->Args({2, 1024})->Args({3, 64})->Unit(benchmark::kMillisecond);

static void BM_BesovNorm(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const int N = static_cast<int>(st.range(1));
    const SpectralField u = random_divfree(make_grid(n, N), N / 3, 1.0, 11);
    BesovParams bp;
    bp.sigma = 0.5;
    bp.q = 2.0;
    for (auto _ : st) benchmark::DoNotOptimize(besov_norm(u, bp));
}
BENCHMARK(BM_BesovNorm)->Args({2, 256})->Args({3, 64})->Unit(benchmark::kMillisecond);

static void BM_Nonlinear(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const int N = static_cast<int>(st.range(1));
    const SpectralField u = random_divfree(make_grid(n, N), N / 4, 1.0, 3);
    for (auto _ : st) benchmark::DoNotOptimize(nonlinear(u));
}
BENCHMARK(BM_Nonlinear)->Args({2, 128})->Args({2, 512})->Args({3, 32})->Args({3, 64})->Unit(benchmark::kMillisecond);

static void BM_DuhamelGrid(benchmark::State& st) {
    const SpectralField u = random_divfree(make_grid(2, 64), 8, 0.1, 5);
    const Trajectory h = heat_trajectory(u, make_time_grid(0.1, static_cast<int>(st.range(0)), 4.0));
    for (auto _ : st) benchmark::DoNotOptimize(duhamel_bilinear_all(h, h));
}
BENCHMARK(BM_DuhamelGrid)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_PicardTaylorGreen(benchmark::State& st) {
    const SpectralField u = taylor_green(make_grid(2, 64));
    KatoParams kp;
    kp.T = 0.5;
    PicardOptions opt;
    opt.density = 16;
    for (auto _ : st) benchmark::DoNotOptimize(picard_solve(u, 0.5, kp, opt));
}
BENCHMARK(BM_PicardTaylorGreen)->Unit(benchmark::kMillisecond);

static void BM_HardyCheck(benchmark::State& st) {
    const auto fam = builtin_family(make_time_grid(1.0, 16, 6.0));
    for (auto _ : st) benchmark::DoNotOptimize(check_hardy_log(fam, 4.0));
}
BENCHMARK(BM_HardyCheck)->Unit(benchmark::kMillisecond);

static void BM_SupportAudit(benchmark::State& st) {
    const InflationConfig cfg = desk_preset(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(support_audit(cfg));
}
BENCHMARK(BM_SupportAudit)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_SparseDuhamel(benchmark::State& st) {
    const InflationConfig cfg = desk_preset(static_cast<int>(st.range(0)));
    const SparseField u = build_sparse_initial_data(cfg, 1.0);
    const double t = evaluation_time(cfg);
    for (auto _ : st) benchmark::DoNotOptimize(duhamel_product(u, t, ProductKind::main, nullptr));
    st.counters["modes"] = static_cast<double>(u.size());
}
BENCHMARK(BM_SparseDuhamel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_InflationFunctionals(benchmark::State& st) {
    const InflationConfig cfg = desk_preset(static_cast<int>(st.range(0)));
    const double t = evaluation_time(cfg);
    for (auto _ : st) benchmark::DoNotOptimize(evaluate_functionals(cfg, t));
}
BENCHMARK(BM_InflationFunctionals)->Arg(2)->Unit(benchmark::kSecond)->Iterations(1);

BENCHMARK_MAIN();
