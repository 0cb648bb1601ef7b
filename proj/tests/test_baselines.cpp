#include <doctest.h>

#include <cmath>

#include "interdep/baselines.hpp"
#include "oracles.hpp"

using namespace interdep;

namespace {

struct Evaluated {
    double optimal;
    double independence;
};

// true-utility comparison of the full method and the worth-only baseline
Evaluated compare_policies(const DependencyGraph& graph, const ConfigurationSet& configs,
                           const GamePriors& priors, const ExpectedLossVector& losses) {
    const auto utilities = build_utility_matrices(losses, configs, true);
    const auto optimal = solve_multiple_lp(utilities, configs, priors);
    const auto indep = independence_policy(graph, configs, priors, true);
    return {
        evaluate_policy(optimal.policy, utilities, configs, priors).defender_utility,
        evaluate_policy(indep, utilities, configs, priors).defender_utility,
    };
}

}  // namespace

TEST_CASE("independence equals the full method without cascades") {
    SUBCASE("no edges") {
        auto g = generate_erdos_renyi(8, 0.0, 3);
        WorthAssignment uniform;
        uniform.mode = WorthAssignment::Mode::Uniform01;
        uniform.seed = 4;
        g = assign_worths(std::move(g), uniform);
        const auto configs = ConfigurationSet::uniform(8, {{0.0, 1.0}, {0.2, 0.0}});
        const auto priors = GamePriors::uniform(8, 1.0);
        const auto losses = estimate_component_losses(CascadeModel::sparse(g), 100, 1);
        const auto both = compare_policies(g, configs, priors, losses);
        CHECK(std::abs(both.optimal - both.independence) <= 1e-6);
    }
    SUBCASE("edges that never cascade") {
        DependencyGraph g(4, false, {{0, 1, 0.0}, {1, 2, 0.0}, {2, 3, 0.0}});
        g.set_worths({0.3, 0.9, 0.5, 0.7});
        const auto configs = ConfigurationSet::uniform(4, {{0.0, 1.0}, {0.15, 0.0}});
        const auto priors = GamePriors::uniform(4, 1.0);
        const auto losses = estimate_component_losses(CascadeModel::sparse(g), 100, 1);
        const auto both = compare_policies(g, configs, priors, losses);
        CHECK(std::abs(both.optimal - both.independence) <= 1e-6);
    }
}

TEST_CASE("independence under-defends a low-worth hub") {
    // star with a nearly worthless hub and certain cascades
    const int n = 6;
    std::vector<Edge> edges;
    for (int leaf = 1; leaf < n; ++leaf) edges.push_back({0, leaf, 1.0});
    DependencyGraph g(n, false, std::move(edges));
    std::vector<double> w(static_cast<std::size_t>(n), 1.0);
    w[0] = 0.01;
    g.set_worths(std::move(w));
    const auto configs = ConfigurationSet::uniform(n, {{0.0, 1.0}, {0.1, 0.0}});
    const auto priors = GamePriors::uniform(n, 1.0);
    const auto losses = tree_expected_losses(CascadeModel::sparse(g));
    const auto both = compare_policies(g, configs, priors, losses);
    CHECK(both.optimal > both.independence + 1e-6);

    const auto indep = independence_policy(g, configs, priors, true);
    CHECK(indep.prob(1, 0) <= 1e-9);  // hub left open
}

TEST_CASE("degree heuristic budget handling") {
    DependencyGraph star(5, false, {{0, 1, 0.5}, {0, 2, 0.5}, {0, 3, 0.5}, {0, 4, 0.5}});
    star.set_worths({1, 1, 1, 1, 1});
    const auto configs = ConfigurationSet::uniform(5, {{0.0, 1.0}, {1.0, 0.0}});

    SUBCASE("zero budget leaves everything on the free option") {
        const auto policy = degree_heuristic_policy(star, configs, 0.0);
        for (int t = 0; t < 5; ++t) CHECK(policy.prob(0, t) == 1.0);
    }
    SUBCASE("full budget shields everything") {
        const auto policy = degree_heuristic_policy(star, configs, 5.0);
        for (int t = 0; t < 5; ++t) CHECK(policy.prob(1, t) == 1.0);
    }
    SUBCASE("unit budget shields only the hub") {
        const auto policy = degree_heuristic_policy(star, configs, 1.0);
        CHECK(policy.prob(1, 0) == 1.0);
        for (int t = 1; t < 5; ++t) CHECK(policy.prob(0, t) == 1.0);
    }
    SUBCASE("spend never exceeds the budget") {
        for (double budget : {0.0, 0.7, 1.3, 2.9, 4.1}) {
            const auto policy = degree_heuristic_policy(star, configs, budget);
            CHECK(policy.expected_cost(configs) <= budget + 1e-12);
        }
    }
}

TEST_CASE("degree heuristic is invariant to relabeling up to ties") {
    // path 0-1-2-3: middle nodes have degree 2
    DependencyGraph path(4, false, {{0, 1, 0.5}, {1, 2, 0.5}, {2, 3, 0.5}});
    path.set_worths({1, 1, 1, 1});
    const auto configs = ConfigurationSet::uniform(4, {{0.0, 1.0}, {1.0, 0.0}});
    const auto policy = degree_heuristic_policy(path, configs, 2.0);
    // budget 2 covers both degree-2 nodes (indices 1 and 2)
    CHECK(policy.prob(1, 1) == 1.0);
    CHECK(policy.prob(1, 2) == 1.0);
    CHECK(policy.prob(0, 0) == 1.0);
    CHECK(policy.prob(0, 3) == 1.0);

    // relabeled: same degree multiset, shields its own degree-2 nodes
    DependencyGraph relabeled(4, false, {{3, 2, 0.5}, {2, 1, 0.5}, {1, 0, 0.5}});
    relabeled.set_worths({1, 1, 1, 1});
    const auto policy2 = degree_heuristic_policy(relabeled, configs, 2.0);
    CHECK(policy2.prob(1, 1) == 1.0);
    CHECK(policy2.prob(1, 2) == 1.0);
}

TEST_CASE("degree heuristic requires a cost-0 option") {
    DependencyGraph g(2, false, {{0, 1, 0.5}});
    g.set_worths({1, 1});
    const auto configs = ConfigurationSet::uniform(2, {{0.1, 1.0}, {0.5, 0.0}});
    CHECK_THROWS_AS(degree_heuristic_policy(g, configs, 1.0), std::invalid_argument);
}

TEST_CASE("heuristics never beat the optimum") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto g = generate_preferential_attachment(12, 1, 1.0, seed);
        WorthAssignment uniform;
        uniform.mode = WorthAssignment::Mode::Uniform01;
        uniform.seed = seed + 50;
        g = assign_worths(std::move(g), uniform);
        const auto configs = ConfigurationSet::uniform(12, {{0.0, 1.0}, {0.25, 0.0}});
        const auto priors = GamePriors::uniform(12, 1.0);
        const auto losses = tree_expected_losses(CascadeModel::sparse(g));
        const auto utilities = build_utility_matrices(losses, configs, true);
        const auto optimal = solve_multiple_lp(utilities, configs, priors);

        const auto spend =
            evaluate_policy(optimal.policy, utilities, configs, priors).expected_cost;
        const auto heuristic = degree_heuristic_policy(g, configs, spend);
        const auto indep = independence_policy(g, configs, priors, true);
        CAPTURE(seed);
        CHECK(evaluate_policy(heuristic, utilities, configs, priors).defender_utility <=
              optimal.objective + 1e-6);
        CHECK(evaluate_policy(indep, utilities, configs, priors).defender_utility <=
              optimal.objective + 1e-6);
    }
}

TEST_CASE("star family scales the independence gap linearly") {
    CHECK_THROWS_AS(independence_gap_family(1), std::invalid_argument);

    auto ratio_for = [](int n) {
        const auto scenario = independence_gap_family(n);
        const auto losses = tree_expected_losses(CascadeModel::sparse(scenario.graph));
        const auto utilities = build_utility_matrices(losses, scenario.configs, true);
        const auto optimal = solve_multiple_lp(utilities, scenario.configs, scenario.priors);
        const auto indep =
            independence_policy(scenario.graph, scenario.configs, scenario.priors, true);
        const double opt_loss =
            -evaluate_policy(optimal.policy, utilities, scenario.configs, scenario.priors)
                 .defender_utility;
        const double indep_loss =
            -evaluate_policy(indep, utilities, scenario.configs, scenario.priors)
                 .defender_utility;
        return indep_loss / opt_loss;
    };

    CHECK(ratio_for(2) >= 1.0);
    const double r5 = ratio_for(5);
    const double r10 = ratio_for(10);
    const double r20 = ratio_for(20);
    CHECK(r10 > r5);
    CHECK(r20 / r10 >= 1.5);

    // the worth-only view shields leaves (up to attacker indifference with
    // the 0.01-worth hub) and leaves the hub open
    const auto scenario = independence_gap_family(10);
    const auto indep =
        independence_policy(scenario.graph, scenario.configs, scenario.priors, true);
    CHECK(indep.prob(1, 0) <= 1e-9);
    for (int leaf = 1; leaf < 10; ++leaf) CHECK(indep.prob(1, leaf) >= 0.98);
}
