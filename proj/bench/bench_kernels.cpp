#include <benchmark/benchmark.h>

#include <cmath>

#include "primerace/quadrature.hpp"
#include "primerace/sieve.hpp"
#include "primerace/singular.hpp"

using namespace primerace;

static void BM_ReferenceSieve(benchmark::State& state) {
    const auto limit = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(reference_primes(limit).size());
}
BENCHMARK(BM_ReferenceSieve)->Arg(10'000'000)->Arg(100'000'000)->Unit(benchmark::kMillisecond);

static void BM_SegmentedSieve(benchmark::State& state) {
    const auto limit = static_cast<std::uint64_t>(state.range(0));
    SieveOptions opts;
    opts.threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(prime_count(limit, opts));
}
BENCHMARK(BM_SegmentedSieve)
    ->Args({10'000'000, 1})
    ->Args({100'000'000, 1})
    ->Args({100'000'000, 4})
    ->Unit(benchmark::kMillisecond);

static void BM_CountPatterns(benchmark::State& state) {
    SieveConfig c;
    c.limit = 100'000'000;
    c.q = static_cast<std::int64_t>(state.range(0));
    c.threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(count_patterns(c).windows);
}
BENCHMARK(BM_CountPatterns)->Args({10, 1})->Args({10, 4})->Unit(benchmark::kMillisecond);

static void BM_S0Serial(benchmark::State& state) {
    const SingularContext ctx(Modulus(12));
    for (auto _ : state) benchmark::DoNotOptimize(s0_brute_serial(ctx, 0, static_cast<double>(state.range(0))).value);
}
BENCHMARK(BM_S0Serial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_S0Parallel(benchmark::State& state) {
    const SingularContext ctx(Modulus(12));
    const int threads = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(s0_brute(ctx, 0, static_cast<double>(state.range(0)), 0, threads).value);
}
BENCHMARK(BM_S0Parallel)->Args({1000, 4})->Args({10000, 4})->Unit(benchmark::kMillisecond);

static void BM_Quadrature(benchmark::State& state) {
    QuadratureOptions opts;
    opts.rel_tol = 1e-12;
    auto f = [](double u) { return std::exp(u) / u; };
    for (auto _ : state) {
        const auto r = state.range(0) ? integrate(f, 1.0, 30.0, opts) : integrate_serial(f, 1.0, 30.0, opts);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_Quadrature)->Arg(0)->Arg(1);

BENCHMARK_MAIN();
