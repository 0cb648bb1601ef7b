#include <doctest.h>

#include <cmath>

#include "interdep/rng.hpp"
#include "interdep/solver.hpp"
#include "oracles.hpp"

using namespace interdep;

namespace {

UtilityMatrices matrices_from(std::vector<double> u, std::vector<double> v, int options, int n) {
    UtilityMatrices m;
    m.num_options = options;
    m.num_targets = n;
    m.U = std::move(u);
    m.V = std::move(v);
    return m;
}

// random zero-sum instance on an exact small-graph loss vector
struct RandomInstance {
    UtilityMatrices utilities;
    ConfigurationSet configs;
    GamePriors priors;
};

RandomInstance random_instance(std::uint64_t seed, int max_targets = 3) {
    Rng rng(seed);
    const int n = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_targets)));
    ExpectedLossVector losses;
    for (int t = 0; t < n; ++t) {
        losses.defender.push_back(0.2 + 2.0 * rng.next_double());
        losses.attacker.push_back(losses.defender.back());
        losses.stderr_defender.push_back(0.0);
    }
    const double beta0 = 0.5 + 0.5 * rng.next_double();
    const double beta1 = 0.5 * rng.next_double();
    const double cost1 = 0.5 * rng.next_double();
    RandomInstance inst{
        {},
        ConfigurationSet::uniform(n, {{0.0, beta0}, {cost1, beta1}}),
        GamePriors::uniform(n, 0.0),
    };
    const std::uint64_t pick = rng.next_below(3);
    inst.priors.r = pick == 0 ? 0.0 : pick == 1 ? 0.5 : 1.0;
    inst.utilities = build_utility_matrices(losses, inst.configs, true);
    return inst;
}

}  // namespace

TEST_CASE("single target prefers the cheap shield") {
    // two options: open (U=-1, V=1, free) and shield (U=0, V=0, cost 0.2)
    const auto utilities = matrices_from({-1.0, 0.0}, {1.0, 0.0}, 2, 1);
    const auto configs = ConfigurationSet::uniform(1, {{0.0, 1.0}, {0.2, 0.0}});

    SUBCASE("pure attack prior") {
        const auto result = solve_multiple_lp(utilities, configs, GamePriors::uniform(1, 1.0));
        CHECK(result.objective == doctest::Approx(-0.2).epsilon(1e-9));
        CHECK(result.policy.prob(0, 0) == doctest::Approx(0.0));
        CHECK(result.policy.prob(1, 0) == doctest::Approx(1.0));
        CHECK(result.attacked_target == 0);
        REQUIRE(result.per_lp.size() == 1);
        CHECK(result.per_lp[0].feasible);
    }
    SUBCASE("pure random failures, short-circuited and not") {
        const auto priors = GamePriors::uniform(1, 0.0);
        const auto fast = solve_multiple_lp(utilities, configs, priors);
        CHECK(fast.shortcircuit_r0);
        CHECK(fast.objective == doctest::Approx(-0.2).epsilon(1e-9));
        SolveOptions full;
        full.disable_r0_shortcircuit = true;
        const auto slow = solve_multiple_lp(utilities, configs, priors, full);
        CHECK_FALSE(slow.shortcircuit_r0);
        CHECK(slow.objective == doctest::Approx(fast.objective).epsilon(1e-9));
    }
}

TEST_CASE("fixed-target LP matches the grid oracle on two targets") {
    // zero-sum, L = (1.0, 0.5), open/shield menu, r = 1, t_hat = the weaker target
    ExpectedLossVector losses;
    losses.defender = {1.0, 0.5};
    losses.attacker = {1.0, 0.5};
    losses.stderr_defender = {0.0, 0.0};
    const auto configs = ConfigurationSet::uniform(2, {{0.0, 1.0}, {0.3, 0.0}});
    const auto utilities = build_utility_matrices(losses, configs, true);
    const auto priors = GamePriors::uniform(2, 1.0);

    const auto solution = solve_fixed_target_lp(utilities, configs, priors, 1);
    REQUIRE(solution.feasible);
    const double grid = oracles::grid_search_fixed_target(utilities, configs, priors, 1, 0.01);
    CHECK(solution.objective >= grid - 1e-9);
    CHECK(std::abs(solution.objective - grid) <= 0.02);
    CHECK(solution.objective == doctest::Approx(-0.6).epsilon(1e-9));
}

TEST_CASE("multiple LP matches the full grid oracle on random instances") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const auto inst = random_instance(seed);
        const auto result = solve_multiple_lp(inst.utilities, inst.configs, inst.priors);
        const double grid =
            oracles::grid_search_best_utility(inst.utilities, inst.configs, inst.priors, 0.01);
        CAPTURE(seed);
        CHECK(result.objective >= grid - 1e-9);
        CHECK(std::abs(result.objective - grid) <= 0.02);
    }
}

TEST_CASE("r=0 equals the unconstrained optimum") {
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        auto inst = random_instance(seed);
        inst.priors.r = 0.0;
        // direct unconstrained maximum of Eq 1a at r=0
        double unconstrained = 0.0;
        for (int t = 0; t < inst.utilities.num_targets; ++t) {
            double best = -1e300;
            for (int o = 0; o < inst.utilities.num_options; ++o)
                best = std::max(best, inst.priors.g[static_cast<std::size_t>(t)] *
                                              inst.utilities.u(o, t) -
                                          inst.configs.cost(o, t));
            unconstrained += best;
        }
        const auto fast = solve_multiple_lp(inst.utilities, inst.configs, inst.priors);
        SolveOptions full;
        full.disable_r0_shortcircuit = true;
        const auto slow = solve_multiple_lp(inst.utilities, inst.configs, inst.priors, full);
        CAPTURE(seed);
        CHECK(fast.objective == doctest::Approx(unconstrained).epsilon(1e-9));
        CHECK(slow.objective == doctest::Approx(unconstrained).epsilon(1e-9));
    }
}

TEST_CASE("directed star concentrates defense on the hub") {
    // hub -> leaves with certain cascades: L(hub) = 5, L(leaf) = 1
    DependencyGraph star(5, true, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {0, 4, 1.0}});
    star.set_worths({1, 1, 1, 1, 1});
    const auto losses = estimate_component_losses(CascadeModel::sparse(star), 1, 2);
    REQUIRE(losses.defender[0] == 5.0);
    const auto configs = ConfigurationSet::uniform(5, {{0.0, 1.0}, {0.5, 0.0}});
    const auto utilities = build_utility_matrices(losses, configs, true);
    const auto priors = GamePriors::uniform(5, 1.0);
    const auto result = solve_multiple_lp(utilities, configs, priors);

    CHECK(result.objective == doctest::Approx(-1.4).epsilon(1e-9));
    CHECK(result.policy.prob(1, 0) == doctest::Approx(0.8).epsilon(1e-9));
    for (int leaf = 1; leaf < 5; ++leaf)
        CHECK(result.policy.prob(1, leaf) <= 1e-9);

    // grid over (hub, common leaf) shield probabilities; leaves are exchangeable
    double best = -1e300;
    for (int hi = 0; hi <= 50; ++hi)
        for (int li = 0; li <= 50; ++li) {
            const double xh = hi * 0.02, xl = li * 0.02;
            const double a_hub = (1.0 - xh) * 5.0, a_leaf = (1.0 - xl) * 1.0;
            const double attacked = std::max(a_hub, a_leaf);
            best = std::max(best, -attacked - 0.5 * (xh + 4.0 * xl));
        }
    CHECK(std::abs(result.objective - best) <= 0.02 + 1e-9);
}

TEST_CASE("parametric and simplex backends agree") {
    for (std::uint64_t seed = 200; seed < 230; ++seed) {
        const auto inst = random_instance(seed, 6);
        SolveOptions parametric;
        parametric.backend = LpBackend::Parametric;
        SolveOptions simplex;
        simplex.backend = LpBackend::Simplex;
        const auto a = solve_multiple_lp(inst.utilities, inst.configs, inst.priors, parametric);
        const auto b = solve_multiple_lp(inst.utilities, inst.configs, inst.priors, simplex);
        CAPTURE(seed);
        CHECK(std::abs(a.objective - b.objective) <= 1e-7);
        REQUIRE(a.per_lp.size() == b.per_lp.size());
        for (std::size_t t = 0; t < a.per_lp.size(); ++t) {
            CAPTURE(t);
            CHECK(a.per_lp[t].feasible == b.per_lp[t].feasible);
            if (a.per_lp[t].feasible && b.per_lp[t].feasible)
                CHECK(std::abs(a.per_lp[t].objective - b.per_lp[t].objective) <= 1e-7);
        }
    }
}

TEST_CASE("policies satisfy the LP constraints") {
    for (std::uint64_t seed = 300; seed < 320; ++seed) {
        const auto inst = random_instance(seed, 5);
        const auto result = solve_multiple_lp(inst.utilities, inst.configs, inst.priors);
        const auto& q = result.policy;
        double attacked_value = 0.0;
        for (int o = 0; o < q.num_options; ++o)
            attacked_value += inst.utilities.v(o, result.attacked_target) *
                              q.prob(o, result.attacked_target);
        for (int t = 0; t < q.num_targets; ++t) {
            double sum = 0.0, value = 0.0;
            for (int o = 0; o < q.num_options; ++o) {
                const double p = q.prob(o, t);
                CHECK(p >= -1e-9);
                CHECK(p <= 1.0 + 1e-9);
                sum += p;
                value += inst.utilities.v(o, t) * p;
            }
            CAPTURE(seed);
            CHECK(std::abs(sum - 1.0) <= 1e-7);
            if (inst.priors.r > 0.0) CHECK(value <= attacked_value + 1e-7);
        }
    }
}

TEST_CASE("evaluation is consistent with the solver objective") {
    for (std::uint64_t seed = 400; seed < 420; ++seed) {
        const auto inst = random_instance(seed, 4);
        const auto result = solve_multiple_lp(inst.utilities, inst.configs, inst.priors);
        const auto eval = evaluate_policy(result.policy, inst.utilities, inst.configs, inst.priors);
        CAPTURE(seed);
        CHECK(std::abs(eval.defender_utility - result.objective) <= 1e-6);
    }
}

TEST_CASE("optimum dominates hand-built policies") {
    for (std::uint64_t seed = 500; seed < 515; ++seed) {
        const auto inst = random_instance(seed, 4);
        const auto result = solve_multiple_lp(inst.utilities, inst.configs, inst.priors);
        const int n = inst.utilities.num_targets;
        std::vector<DefensePolicy> rivals;
        DefensePolicy uniform = DefensePolicy::zeros(2, n);
        DefensePolicy open = DefensePolicy::zeros(2, n);
        DefensePolicy shield = DefensePolicy::zeros(2, n);
        for (int t = 0; t < n; ++t) {
            uniform.prob(0, t) = uniform.prob(1, t) = 0.5;
            open.prob(0, t) = 1.0;
            shield.prob(1, t) = 1.0;
        }
        rivals.push_back(uniform);
        rivals.push_back(open);
        rivals.push_back(shield);
        for (const auto& rival : rivals) {
            const auto eval = evaluate_policy(rival, inst.utilities, inst.configs, inst.priors);
            CAPTURE(seed);
            CHECK(eval.defender_utility <= result.objective + 1e-6);
        }
    }
}

TEST_CASE("all-open policy sends the attacker to the largest loss") {
    ExpectedLossVector losses;
    losses.defender = {1.0, 3.0, 2.0};
    losses.attacker = losses.defender;
    losses.stderr_defender = {0, 0, 0};
    const auto configs = ConfigurationSet::uniform(3, {{0.0, 1.0}, {0.4, 0.0}});
    const auto utilities = build_utility_matrices(losses, configs, true);
    DefensePolicy open = DefensePolicy::zeros(2, 3);
    for (int t = 0; t < 3; ++t) open.prob(0, t) = 1.0;
    const auto eval = evaluate_policy(open, utilities, configs, GamePriors::uniform(3, 1.0));
    CHECK(eval.attacker_target == 1);
    CHECK(eval.defender_utility == doctest::Approx(-3.0));
    CHECK(eval.expected_cost == 0.0);
}

TEST_CASE("cost scaling never improves the optimum") {
    for (std::uint64_t seed = 600; seed < 610; ++seed) {
        const auto inst = random_instance(seed, 4);
        double previous = solve_multiple_lp(inst.utilities, inst.configs, inst.priors).objective;
        for (double lambda : {1.5, 2.0, 5.0}) {
            std::vector<std::vector<ConfigurationSet::Option>> menus;
            for (int t = 0; t < inst.configs.num_targets(); ++t) {
                std::vector<ConfigurationSet::Option> menu;
                for (int o = 0; o < inst.configs.num_options(); ++o)
                    menu.push_back({lambda * inst.configs.cost(o, t), inst.configs.beta(o, t)});
                menus.push_back(std::move(menu));
            }
            const auto scaled = ConfigurationSet::per_target(menus);
            const double objective =
                solve_multiple_lp(inst.utilities, scaled, inst.priors).objective;
            CAPTURE(seed);
            CHECK(objective <= previous + 1e-9);
            previous = objective;
        }
    }
}

TEST_CASE("symmetric instances break ties toward target zero") {
    ExpectedLossVector losses;
    losses.defender = {1.0, 1.0, 1.0};
    losses.attacker = losses.defender;
    losses.stderr_defender = {0, 0, 0};
    const auto configs = ConfigurationSet::uniform(3, {{0.0, 1.0}, {0.4, 0.0}});
    const auto utilities = build_utility_matrices(losses, configs, true);
    const auto result = solve_multiple_lp(utilities, configs, GamePriors::uniform(3, 1.0));
    CHECK(result.attacked_target == 0);
    for (std::size_t t = 0; t < 3; ++t) {
        REQUIRE(result.per_lp[t].feasible);
        CHECK(result.per_lp[t].objective == doctest::Approx(result.objective).epsilon(1e-9));
    }
}

TEST_CASE("per-target infeasibility is recorded, not raised") {
    // single option per target; target 0 always beats target 1 for the attacker
    const auto utilities = matrices_from({-2.0, -1.0}, {2.0, 1.0}, 1, 2);
    const auto configs = ConfigurationSet::uniform(2, {{0.0, 1.0}});
    const auto result = solve_multiple_lp(utilities, configs, GamePriors::uniform(2, 1.0));
    CHECK(result.attacked_target == 0);
    REQUIRE(result.per_lp.size() == 2);
    CHECK(result.per_lp[0].feasible);
    CHECK_FALSE(result.per_lp[1].feasible);
}

TEST_CASE("budgets restrict spending") {
    ExpectedLossVector losses;
    losses.defender = {2.0, 2.0};
    losses.attacker = losses.defender;
    losses.stderr_defender = {0, 0};
    const auto configs = ConfigurationSet::uniform(2, {{0.0, 1.0}, {1.0, 0.0}});
    const auto utilities = build_utility_matrices(losses, configs, true);
    const auto priors = GamePriors::uniform(2, 1.0);

    const auto unbudgeted = solve_multiple_lp(utilities, configs, priors);
    SolveOptions capped;
    capped.budget = 0.5;
    const auto budgeted = solve_multiple_lp(utilities, configs, priors, capped);
    CHECK(budgeted.policy.expected_cost(configs) <= 0.5 + 1e-7);
    CHECK(budgeted.objective <= unbudgeted.objective + 1e-9);

    SolveOptions per_target;
    per_target.budget = 0.25;
    per_target.budget_mode = BudgetMode::PerTarget;
    const auto split = solve_multiple_lp(utilities, configs, priors, per_target);
    for (int t = 0; t < 2; ++t) {
        double spend = 0.0;
        for (int o = 0; o < 2; ++o) spend += configs.cost(o, t) * split.policy.prob(o, t);
        CHECK(spend <= 0.25 + 1e-7);
    }
}

TEST_CASE("budget below the cheapest profile is an explicit error") {
    ExpectedLossVector losses;
    losses.defender = {1.0};
    losses.attacker = losses.defender;
    losses.stderr_defender = {0};
    const auto configs = ConfigurationSet::uniform(1, {{0.3, 1.0}, {0.6, 0.0}});
    const auto utilities = build_utility_matrices(losses, configs, true);
    SolveOptions capped;
    capped.budget = 0.1;  // below min_total_cost() = 0.3
    CHECK_THROWS_AS(
        solve_multiple_lp(utilities, configs, GamePriors::uniform(1, 1.0), capped),
        NoFeasibleTargetError);
}

TEST_CASE("priors are validated") {
    GamePriors bad;
    bad.r = 1.5;
    bad.g = {1.0};
    CHECK_THROWS_AS(bad.validate(1), std::invalid_argument);
    GamePriors sum;
    sum.r = 0.5;
    sum.g = {0.7, 0.7};
    CHECK_THROWS_AS(sum.validate(2), std::invalid_argument);
    CHECK_THROWS_AS(GamePriors::uniform(2).validate(3), std::invalid_argument);
}
