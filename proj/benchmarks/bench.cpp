#include <benchmark/benchmark.h>

#include "relspec/collapse.hpp"
#include "relspec/linalg.hpp"
#include "relspec/spec2.hpp"
#include "relspec/symbol.hpp"

using namespace relspec;

static void BM_spec2(benchmark::State& state) {
    const Eigen::Index n = state.range(0);
    HermitianMatrix T = random_hermitian(2 * n, 1);
    Subspace L = Subspace::leading_coordinates(2 * n, n);
    for (auto _ : state) benchmark::DoNotOptimize(spec2(T, L));
}
BENCHMARK(BM_spec2)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

static void BM_hermitian_eig(benchmark::State& state) {
    HermitianMatrix H = random_hermitian(state.range(0), 2);
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(H));
}
BENCHMARK(BM_hermitian_eig)->Arg(64)->Arg(256)->Arg(1024);

static void BM_hausdorff(benchmark::State& state) {
    const long n = state.range(0);
    std::vector<cplx> F, G;
    for (long k = 0; k < n; ++k) {
        F.push_back(std::polar(1.0 + 1e-3 * k, 0.7 * k));
        G.push_back(std::polar(2.0 - 1e-3 * k, 0.3 * k));
    }
    for (auto _ : state) benchmark::DoNotOptimize(hausdorff(F, G));
}
BENCHMARK(BM_hausdorff)->Arg(100)->Arg(1000);

static void BM_toeplitz_build(benchmark::State& state) {
    AnalyticSymbol s = build_symbol(2.0, 0.5, 0.4, 384);
    for (auto _ : state) benchmark::DoNotOptimize(toeplitz_analytic(s, state.range(0)));
}
BENCHMARK(BM_toeplitz_build)->Arg(64)->Arg(256)->Arg(1024);

static void BM_collapse(benchmark::State& state) {
    CollapseOptions opts;
    opts.fixed_N = state.range(0);
    opts.allow_density_failure = true;
    for (auto _ : state)
        benchmark::DoNotOptimize(collapse_construct(-2.0, 2.0, 0.5, 0.2, 0.4, opts));
}
BENCHMARK(BM_collapse)->Arg(16)->Arg(64)->Arg(256);

static void BM_delta_bound(benchmark::State& state) {
    HermitianMatrix B = random_hermitian(4, 3);
    Matrix G = random_matrix(4, 4, 4);
    QuadraticPencil p(B, HermitianMatrix(Matrix(B.mat() * B.mat() + G.adjoint() * G)));
    for (auto _ : state) benchmark::DoNotOptimize(delta_bound(p, 0.1));
}
BENCHMARK(BM_delta_bound);

BENCHMARK_MAIN();
