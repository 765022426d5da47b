#include "trop/invariants.hpp"
#include "trop/verification.hpp"

#include <benchmark/benchmark.h>

using namespace trop;

static void bm_bracket_products(benchmark::State& state) {
    for (auto _ : state) {
        QFraction f = QFraction::one();
        for (long long a = 2; a <= 12; ++a) f = f * bracket_plus(a) * QFraction::of(bracket_minus(a));
        benchmark::DoNotOptimize(f.reduce());
    }
}
BENCHMARK(bm_bracket_products);

static void bm_relation_fuzz(benchmark::State& state) {
    for (auto _ : state) {
        auto rep = fuzz_relation_C(100, 10, 42);
        benchmark::DoNotOptimize(rep.violations);
    }
}
BENCHMARK(bm_relation_fuzz);

static void bm_enumerate_conics(benchmark::State& state) {
    Degree deg = Degree::p2(2);
    Config cfg = random_config(deg, 5, 0, 3);
    for (auto _ : state) {
        auto rep = enumerate_through(deg, 5, 0, cfg);
        benchmark::DoNotOptimize(rep.curves.size());
    }
}
BENCHMARK(bm_enumerate_conics);

static void bm_enumerate_cubics(benchmark::State& state) {
    Degree deg = Degree::p2(3);
    Config cfg = random_config(deg, 4, 2, 1);
    for (auto _ : state) {
        auto rep = enumerate_through(deg, 4, 2, cfg);
        benchmark::DoNotOptimize(rep.curves.size());
    }
}
BENCHMARK(bm_enumerate_cubics);

static void bm_refined_invariant_cubic(benchmark::State& state) {
    Degree deg = Degree::p2(3);
    auto [cfg, rep] = random_config_enumerated(deg, 8, 0, 2);
    for (auto _ : state) {
        auto res = invariant_rB(deg, 8, 0, rep);
        benchmark::DoNotOptimize(res.value);
    }
}
BENCHMARK(bm_refined_invariant_cubic);

BENCHMARK_MAIN();
