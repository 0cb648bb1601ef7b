#include "interdep/baselines.hpp"

#include <algorithm>
#include <numeric>

namespace interdep {

DefensePolicy independence_policy(const DependencyGraph& graph, const ConfigurationSet& configs,
                                  const GamePriors& priors, bool zero_sum,
                                  const SolveOptions& options) {
    ExpectedLossVector worth_only;
    worth_only.defender = graph.worths();
    worth_only.attacker = graph.attacker_worths();
    worth_only.stderr_defender.assign(graph.worths().size(), 0.0);
    worth_only.sample_count = 0;
    const UtilityMatrices utilities = build_utility_matrices(worth_only, configs, zero_sum);
    return solve_multiple_lp(utilities, configs, priors, options).policy;
}

DefensePolicy degree_heuristic_policy(const DependencyGraph& graph,
                                      const ConfigurationSet& configs, double budget) {
    const int n = graph.size();
    if (configs.num_targets() != n)
        throw std::invalid_argument("configuration set does not match graph");
    if (!(budget >= 0.0)) throw std::invalid_argument("budget must be nonnegative");

    // most protective option per target: max (1 - beta), ties by lower
    // cost then lower index; null option: cost 0, ties by lower beta
    // then lower index
    std::vector<int> protect(static_cast<std::size_t>(n), 0);
    std::vector<int> null_opt(static_cast<std::size_t>(n), -1);
    for (int t = 0; t < n; ++t) {
        int best = 0;
        for (int o = 1; o < configs.num_options(); ++o) {
            if (configs.beta(o, t) < configs.beta(best, t) ||
                (configs.beta(o, t) == configs.beta(best, t) &&
                 configs.cost(o, t) < configs.cost(best, t)))
                best = o;
        }
        protect[static_cast<std::size_t>(t)] = best;
        for (int o = 0; o < configs.num_options(); ++o) {
            if (configs.cost(o, t) != 0.0) continue;
            const int cur = null_opt[static_cast<std::size_t>(t)];
            if (cur < 0 || configs.beta(o, t) < configs.beta(cur, t))
                null_opt[static_cast<std::size_t>(t)] = o;
        }
        if (null_opt[static_cast<std::size_t>(t)] < 0)
            throw std::invalid_argument("degree heuristic requires a cost-0 option at target " +
                                        std::to_string(t));
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    const std::vector<int> deg = graph.degrees();
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (deg[static_cast<std::size_t>(a)] != deg[static_cast<std::size_t>(b)])
            return deg[static_cast<std::size_t>(a)] > deg[static_cast<std::size_t>(b)];
        return a < b;
    });

    DefensePolicy policy = DefensePolicy::zeros(configs.num_options(), n);
    double remaining = budget;
    for (int t : order) {
        const int o = protect[static_cast<std::size_t>(t)];
        if (configs.cost(o, t) <= remaining) {
            policy.prob(o, t) = 1.0;
            remaining -= configs.cost(o, t);
        } else {
            policy.prob(null_opt[static_cast<std::size_t>(t)], t) = 1.0;
        }
    }
    return policy;
}

IndependenceGapScenario independence_gap_family(int n, double hub_worth) {
    if (n < 2) throw std::invalid_argument("family requires n >= 2");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) - 1);
    for (int leaf = 1; leaf < n; ++leaf) edges.push_back({0, leaf, 1.0});
    DependencyGraph graph(n, false, std::move(edges));
    std::vector<double> worths(static_cast<std::size_t>(n), 1.0);
    worths[0] = hub_worth;
    graph.set_worths(std::move(worths));

    IndependenceGapScenario scenario{
        std::move(graph),
        ConfigurationSet::uniform(n, {{0.0, 1.0}, {1.0 / (2.0 * n), 0.0}}),
        GamePriors::uniform(n, 1.0),
    };
    return scenario;
}

}  // namespace interdep
