#pragma once

#include "interdep/graph.hpp"
#include "interdep/solver.hpp"

namespace interdep {

// Policy computed as if targets were independent: losses are the
// intrinsic worths (L(t) = w_t), so U = -beta * w. Callers evaluate the
// result against the true cascade utilities.
DefensePolicy independence_policy(const DependencyGraph& graph, const ConfigurationSet& configs,
                                  const GamePriors& priors, bool zero_sum,
                                  const SolveOptions& options = {});

// Vaccination-style heuristic: walk targets in descending degree order
// (ties by index) and deploy the most protective option while its cost
// fits the remaining budget, the cheapest zero-cost option otherwise.
DefensePolicy degree_heuristic_policy(const DependencyGraph& graph,
                                      const ConfigurationSet& configs, double budget);

// Star family on which ignoring interdependence is ~O(n) worse than
// optimal: hub worth eps, n-1 leaves of worth 1, certain cascades, and
// shield cost 1/(2n) so the optimum shields every node (hub included)
// while the worth-only view leaves the hub open.
struct IndependenceGapScenario {
    DependencyGraph graph;
    ConfigurationSet configs;
    GamePriors priors;
};
IndependenceGapScenario independence_gap_family(int n, double hub_worth = 0.01);

}  // namespace interdep
