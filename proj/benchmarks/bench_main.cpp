#include <benchmark/benchmark.h>

#include "homlab/adjoint.hpp"
#include "homlab/cover.hpp"
#include "homlab/exponential.hpp"
#include "homlab/fixtures.hpp"
#include "homlab/hom.hpp"
#include "homlab/median.hpp"
#include "homlab/walk.hpp"

using namespace homlab;

static void BM_find_hom_component_to_spindle(benchmark::State& state) {
    Graph m = fixtures::moser();
    auto comp = exp_component(m, 3, ExpTable(3, 0), 5000);
    for (auto _ : state) {
        auto h = find_hom(comp.graph, m);
        benchmark::DoNotOptimize(h);
    }
}
BENCHMARK(BM_find_hom_component_to_spindle);

static void BM_universal_cover(benchmark::State& state) {
    auto d = fixtures::moser_dismantling();
    for (auto _ : state) {
        auto cov = CoverGraph::universal(d, 0, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(cov.vertex_count());
    }
}
BENCHMARK(BM_universal_cover)->Arg(6)->Arg(9)->Arg(12);

static void BM_normal_form(benchmark::State& state) {
    auto d = fixtures::kb_dismantling();
    const Graph& kb = d.source();
    Walk w(&kb, {5, 6, 7, 8, 9, 5, 6, 7, 8, 9, 5});  // inner cycle twice
    for (auto _ : state) {
        auto nf = normal_form(d, w);
        benchmark::DoNotOptimize(nf.length());
    }
}
BENCHMARK(BM_normal_form);

static void BM_p3_inverse(benchmark::State& state) {
    Graph p = p3(cycle_graph(13));
    for (auto _ : state) {
        auto inv = p3_inverse(p);
        benchmark::DoNotOptimize(inv.graph.vertex_count());
    }
}
BENCHMARK(BM_p3_inverse);

static void BM_cyclic_hom_spindle(benchmark::State& state) {
    Graph m = fixtures::moser();
    auto d = fixtures::moser_dismantling();
    auto comp = exp_component(m, 3, ExpTable(3, 0), 5000);
    for (auto _ : state) {
        auto res = cyclic_hom(m, d, 3, comp);
        benchmark::DoNotOptimize(res.hom.has_value());
    }
}
BENCHMARK(BM_cyclic_hom_spindle);

static void BM_conjugacy_oracle_positive(benchmark::State& state) {
    Graph m = fixtures::moser();
    Walk square(&m, {0, 1, 2, 5, 0});
    Walk padded(&m, {0, 1, 0, 1, 0});
    for (auto _ : state) {
        auto v = conjugacy_oracle(m, square, padded, 8);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_conjugacy_oracle_positive);

BENCHMARK_MAIN();
