#include <benchmark/benchmark.h>

#include <random>

#include "c4/freefermion.hpp"
#include "c4/linalg.hpp"
#include "c4/measures.hpp"
#include "c4/pfaffian.hpp"
#include "c4/states.hpp"

using namespace c4;

namespace {

AntisymmetricMatrix random_antisym(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    AntisymmetricMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = g(rng);
            a(i, j) = v;
            a(j, i) = -v;
        }
    return a;
}

ComplexMatrix random_hermitian(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = g(rng);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx v{g(rng), g(rng)};
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
    return m;
}

}  // namespace

static void BM_Pfaffian(benchmark::State& state) {
    const auto a = random_antisym(static_cast<std::size_t>(state.range(0)), 42);
    for (auto _ : state) benchmark::DoNotOptimize(pfaffian(a));
}
BENCHMARK(BM_Pfaffian)->Arg(8)->Arg(16)->Arg(32);

static void BM_HermEig16(benchmark::State& state) {
    const auto m = random_hermitian(16, 43);
    for (auto _ : state) benchmark::DoNotOptimize(herm_eig(m));
}
BENCHMARK(BM_HermEig16);

static void BM_FourTangleMixed(benchmark::State& state) {
    const MixtureFamily fam = mixture_family("ghzprime-bb-w");
    const DensityMatrix rho = family_density(fam, 0.4, 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(fourtangle_mixed(rho));
}
BENCHMARK(BM_FourTangleMixed);

static void BM_Correlators(benchmark::State& state) {
    const ChainConfig cfg{1.05, 0.5, static_cast<int>(state.range(0)), Backend::FreeFermion};
    for (auto _ : state) benchmark::DoNotOptimize(ff_correlators(cfg));
}
BENCHMARK(BM_Correlators)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_QuadC4(benchmark::State& state) {
    const CorrelatorTable t = ff_correlators({1.05, 1.0, 200, Backend::FreeFermion});
    for (auto _ : state) benchmark::DoNotOptimize(chain_c4(t, SiteQuad{1, 7, 1}));
}
BENCHMARK(BM_QuadC4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
