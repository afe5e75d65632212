// Serial against OpenMP kernels: the walk-count table and the term buckets.

#include <benchmark/benchmark.h>

#include <random>

#include "taged/automaton.hpp"
#include "taged/graph.hpp"
#include "taged/reduction.hpp"

using namespace taged;

namespace {

Digraph dense(std::size_t n) {
    std::mt19937_64 rng(n);
    return random_digraph(n, 0.7, rng);
}

void walk_table(benchmark::State& state, Execution exec) {
    const auto g = dense(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(walk_count_table(g, exec));
    state.SetComplexityN(state.range(0));
}

void term_buckets(benchmark::State& state, Execution exec) {
    const auto g = dense(static_cast<std::size_t>(state.range(0)));
    const auto b = build_b_g(g);
    const std::vector<bool> all(b.state_count(), true);
    const std::size_t size = 2 * g.vertex_count() - 1;
    for (auto _ : state) {
        auto buckets = build_term_buckets(b, size, all, std::size_t{1} << 30, exec);
        benchmark::DoNotOptimize(buckets.total);
        state.counters["terms"] = static_cast<double>(buckets.total);
    }
}

void BM_WalkTableSerial(benchmark::State& s) { walk_table(s, Execution::serial); }
void BM_WalkTableParallel(benchmark::State& s) { walk_table(s, Execution::parallel); }
void BM_TermBucketsSerial(benchmark::State& s) { term_buckets(s, Execution::serial); }
void BM_TermBucketsParallel(benchmark::State& s) { term_buckets(s, Execution::parallel); }

}  // namespace

BENCHMARK(BM_WalkTableSerial)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WalkTableParallel)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TermBucketsSerial)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TermBucketsParallel)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
