#include <benchmark/benchmark.h>

#include <random>

#include "bufferless/engine.hpp"
#include "bufferless/netgen.hpp"
#include "bufferless/routing.hpp"
#include "bufferless/sweep.hpp"

using namespace bufferless;

static void BM_price_generate(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const Graph g = price_generate(GenParams{n, 0, 2, 0.5, seed++});
        benchmark::DoNotOptimize(g.edge_count());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_price_generate)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_build_tables(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const Graph g = price_generate(GenParams{n, 0, 2, 0.5, 7});
    for (auto _ : state) {
        const RoutingTable t = build_tables(g, 1.0);
        benchmark::DoNotOptimize(t.node_count());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_build_tables)->Arg(200)->Arg(500)->Arg(1000);

static void BM_next_hop(benchmark::State& state) {
    const Graph g = price_generate(GenParams{1000, 0, 2, 0.5, 7});
    const RoutingTable t = build_tables(g, 1.0);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint32_t> node(0, g.node_count() - 1);
    for (auto _ : state) {
        std::uint32_t s = node(rng), d = node(rng);
        if (s == d) continue;
        benchmark::DoNotOptimize(t.pick_next_hop(s, d, rng));
    }
}
BENCHMARK(BM_next_hop);

// Whole-step throughput at the saturated operating point of the C sweep.
static void BM_engine_step(benchmark::State& state) {
    const double c_coeff = static_cast<double>(state.range(0));
    const Graph g = price_generate(GenParams{1000, 0, 2, 0.5, 7});
    const RoutingTable t = build_tables(g, 1.0);
    Simulation sim(g, t, EngineParams{2.0, c_coeff, 1u << 30, 0, 13});
    for (auto _ : state) sim.step();
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(g.node_count()));
}
BENCHMARK(BM_engine_step)->Arg(1)->Arg(2)->Arg(8);

static void BM_full_replication(benchmark::State& state) {
    const RunConfig rc{1000, 2, 0, 0.5, 2.0, 2.0, 1.0, 100, 0};
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const MetricsReport r = run_replication(rc, seed, seed + 1);
        benchmark::DoNotOptimize(r.generated);
        ++seed;
    }
}
BENCHMARK(BM_full_replication);

BENCHMARK_MAIN();
