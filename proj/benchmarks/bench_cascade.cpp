#include <benchmark/benchmark.h>

#include "interdep/cascade.hpp"
#include "interdep/graph.hpp"

using namespace interdep;

namespace {

CascadeModel er_model(int n, double avg_degree) {
    auto g = generate_erdos_renyi(n, avg_degree / (n - 1), 7);
    WorthAssignment w;
    w.mode = WorthAssignment::Mode::Uniform01;
    w.seed = 8;
    return CascadeModel::sparse(assign_worths(std::move(g), w));
}

}  // namespace

static void BM_LiveEdgeSample(benchmark::State& state) {
    const auto model = er_model(static_cast<int>(state.range(0)), 4.0);
    std::uint64_t k = 0;
    for (auto _ : state) {
        Rng rng(substream_seed(1, k++));
        benchmark::DoNotOptimize(sample_live_edge_graph(model, rng));
    }
}
BENCHMARK(BM_LiveEdgeSample)->Arg(100)->Arg(1000)->Arg(6474);

static void BM_EstimateLosses(benchmark::State& state) {
    const auto model = er_model(static_cast<int>(state.range(0)), 4.0);
    const int samples = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_component_losses(model, samples, 42));
    state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_EstimateLosses)->Args({100, 10000})->Args({1000, 1000})->Args({6474, 1000});

static void BM_TreeLosses(benchmark::State& state) {
    auto g = generate_preferential_attachment(static_cast<int>(state.range(0)), 1, 1.0, 5);
    WorthAssignment w;
    w.mode = WorthAssignment::Mode::Uniform01;
    w.seed = 6;
    const auto model = CascadeModel::sparse(assign_worths(std::move(g), w));
    for (auto _ : state) benchmark::DoNotOptimize(tree_expected_losses(model));
}
BENCHMARK(BM_TreeLosses)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_CascadeBfs(benchmark::State& state) {
    const auto model = er_model(static_cast<int>(state.range(0)), 4.0);
    std::uint64_t k = 0;
    for (auto _ : state) {
        ++k;
        Rng rng(substream_seed(3, k));
        benchmark::DoNotOptimize(
            simulate_cascade_bfs(model, static_cast<TargetId>(k % model.size()), rng));
    }
}
BENCHMARK(BM_CascadeBfs)->Arg(1000);
