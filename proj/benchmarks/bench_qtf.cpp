// bench_qtf.cpp — Microbenchmarks for the dense kernels and the main pipelines

#include <benchmark/benchmark.h>

#include "qtf/qtf.hpp"

namespace {

using namespace qtf;

void BM_HermEig(benchmark::State& state)
{
    rnd::Engine rng = rnd::make_engine(1);
    const CMatrix h = rnd::hermitian(state.range(0), rng);
    for (auto _ : state) benchmark::DoNotOptimize(herm_eig(h));
}
BENCHMARK(BM_HermEig)->RangeMultiplier(2)->Range(2, 32);

void BM_Expm(benchmark::State& state)
{
    rnd::Engine rng = rnd::make_engine(2);
    const CMatrix m = rnd::ginibre(state.range(0), rng);
    for (auto _ : state) benchmark::DoNotOptimize(expm(m));
}
BENCHMARK(BM_Expm)->RangeMultiplier(2)->Range(2, 64);

void BM_GeneratorApply(benchmark::State& state)
{
    rnd::Engine rng = rnd::make_engine(3);
    const DbcGenerator g = DbcGenerator::from_sigma(rnd::faithful_density(state.range(0), rng));
    const CMatrix x = rnd::ginibre(state.range(0), rng);
    for (auto _ : state) benchmark::DoNotOptimize(g.apply(x));
}
BENCHMARK(BM_GeneratorApply)->RangeMultiplier(2)->Range(2, 32);

void BM_Superoperator(benchmark::State& state)
{
    rnd::Engine rng = rnd::make_engine(4);
    const DbcGenerator g = DbcGenerator::from_sigma(rnd::faithful_density(state.range(0), rng));
    for (auto _ : state) benchmark::DoNotOptimize(g.to_superoperator(Picture::kSchrodinger));
}
BENCHMARK(BM_Superoperator)->DenseRange(2, 8, 2);

void BM_Evolve(benchmark::State& state)
{
    rnd::Engine rng = rnd::make_engine(5);
    const DensityMatrix sigma = rnd::faithful_density(state.range(0), rng);
    const DbcGenerator g = DbcGenerator::from_sigma(sigma);
    const CMatrix rho = rnd::density(state.range(0), rng).matrix();
    for (auto _ : state) benchmark::DoNotOptimize(g.evolve(1.0, rho, Picture::kSchrodinger));
}
BENCHMARK(BM_Evolve)->DenseRange(2, 8, 2);

void BM_Equilibrium(benchmark::State& state)
{
    rnd::Engine rng = rnd::make_engine(6);
    const CMatrix a = rnd::hermitian(state.range(0), rng);
    for (auto _ : state) benchmark::DoNotOptimize(equilibrium(a));
}
BENCHMARK(BM_Equilibrium)->RangeMultiplier(2)->Range(2, 32);

void BM_CheckDbc(benchmark::State& state)
{
    rnd::Engine rng = rnd::make_engine(7);
    const DbcGenerator g = DbcGenerator::from_sigma(rnd::faithful_density(state.range(0), rng));
    for (auto _ : state) benchmark::DoNotOptimize(check_dbc(g, 10, 0));
}
BENCHMARK(BM_CheckDbc)->DenseRange(2, 6, 2);

} // namespace

BENCHMARK_MAIN();
