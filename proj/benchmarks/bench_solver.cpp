#include <benchmark/benchmark.h>

#include "interdep/baselines.hpp"
#include "interdep/solver.hpp"

using namespace interdep;

namespace {

struct Instance {
    ConfigurationSet configs;
    UtilityMatrices utilities;
    GamePriors priors;
};

Instance pa_instance(int n, double r) {
    auto g = generate_preferential_attachment(n, 2, 1.0, 11);
    WorthAssignment w;
    w.mode = WorthAssignment::Mode::Uniform01;
    w.seed = 12;
    g = assign_worths(std::move(g), w);
    const auto losses = estimate_component_losses(CascadeModel::sparse(g), 1000, 13);
    Instance inst{ConfigurationSet::uniform(n, {{0.0, 1.0}, {0.2, 0.0}}), {}, GamePriors::uniform(n, r)};
    inst.utilities = build_utility_matrices(losses, inst.configs, true);
    return inst;
}

}  // namespace

static void BM_MultipleLpParametric(benchmark::State& state) {
    const auto inst = pa_instance(static_cast<int>(state.range(0)), 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_multiple_lp(inst.utilities, inst.configs, inst.priors));
}
BENCHMARK(BM_MultipleLpParametric)->Arg(100)->Arg(1000)->Arg(6474);

static void BM_MultipleLpSimplex(benchmark::State& state) {
    const auto inst = pa_instance(static_cast<int>(state.range(0)), 1.0);
    SolveOptions options;
    options.backend = LpBackend::Simplex;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            solve_multiple_lp(inst.utilities, inst.configs, inst.priors, options));
}
BENCHMARK(BM_MultipleLpSimplex)->Arg(20)->Arg(50);

static void BM_FixedTargetLp(benchmark::State& state) {
    const auto inst = pa_instance(static_cast<int>(state.range(0)), 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_fixed_target_lp(inst.utilities, inst.configs, inst.priors, 0));
}
BENCHMARK(BM_FixedTargetLp)->Arg(1000);

static void BM_BudgetedSolve(benchmark::State& state) {
    const auto inst = pa_instance(static_cast<int>(state.range(0)), 1.0);
    SolveOptions options;
    options.budget = 0.2 * state.range(0) / 4.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            solve_multiple_lp(inst.utilities, inst.configs, inst.priors, options));
}
BENCHMARK(BM_BudgetedSolve)->Arg(30);

static void BM_EvaluatePolicy(benchmark::State& state) {
    const auto inst = pa_instance(static_cast<int>(state.range(0)), 1.0);
    const auto result = solve_multiple_lp(inst.utilities, inst.configs, inst.priors);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            evaluate_policy(result.policy, inst.utilities, inst.configs, inst.priors));
}
BENCHMARK(BM_EvaluatePolicy)->Arg(1000);
