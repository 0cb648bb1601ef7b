#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "interdep/graph.hpp"
#include "interdep/rng.hpp"

namespace interdep {

// Per-target menu of security options. All targets carry the same
// number of options; costs and penetration probabilities may vary per
// target. beta is the probability a direct attack penetrates (1 =
// undefended, 0 = fully protective).
class ConfigurationSet {
public:
    ConfigurationSet() = default;

    struct Option {
        double cost = 0.0;
        double beta = 1.0;
    };

    // Same menu at every target.
    static ConfigurationSet uniform(int num_targets, std::vector<Option> menu);
    // Per-target menus; all must have the same length.
    static ConfigurationSet per_target(std::vector<std::vector<Option>> menus);

    int num_targets() const { return num_targets_; }
    int num_options() const { return num_options_; }
    double cost(int option, TargetId t) const {
        return cost_[static_cast<std::size_t>(option) * num_targets_ + t];
    }
    double beta(int option, TargetId t) const {
        return beta_[static_cast<std::size_t>(option) * num_targets_ + t];
    }

    // Sum over targets of the cheapest option; the floor of any budget.
    double min_total_cost() const;

private:
    int num_targets_ = 0;
    int num_options_ = 0;
    std::vector<double> cost_;  // num_options x num_targets, row-major
    std::vector<double> beta_;
};

// Expected total worth of the attacked target's component in the
// live-edge graph, one entry per target, for defender and attacker
// worths, with Monte Carlo standard errors (zero when exact).
struct ExpectedLossVector {
    std::vector<double> defender;
    std::vector<double> attacker;
    std::vector<double> stderr_defender;
    int sample_count = 0;

    int size() const { return static_cast<int>(defender.size()); }
    std::string to_csv() const;  // target,loss_def,loss_atk,stderr
};

// Defender/attacker expected utilities per (option, target).
// U = -beta * L_def (worths are losses), V = -U for zero-sum instances.
struct UtilityMatrices {
    int num_options = 0;
    int num_targets = 0;
    std::vector<double> U;  // num_options x num_targets, row-major
    std::vector<double> V;

    double u(int option, TargetId t) const {
        return U[static_cast<std::size_t>(option) * num_targets + t];
    }
    double v(int option, TargetId t) const {
        return V[static_cast<std::size_t>(option) * num_targets + t];
    }
};

// One live-edge draw: each candidate edge retained independently with
// its cascade probability; undirected models only.
struct ComponentPartition {
    std::vector<int> label;        // component id per target, in [0, count)
    int count = 0;
};
ComponentPartition sample_live_edge_graph(const CascadeModel& model, Rng& rng);

// Breadth-first contagion from `start`; every edge is attempted at most
// once. Works on directed and undirected models.
std::vector<TargetId> simulate_cascade_bfs(const CascadeModel& model, TargetId start, Rng& rng);

// Monte Carlo estimate of expected component losses over K live-edge
// samples (undirected) or per-start BFS averaging (directed, quadratic).
// Deterministic given master_seed, independent of worker-thread count.
ExpectedLossVector estimate_component_losses(const CascadeModel& model, int sample_count,
                                             std::uint64_t master_seed);

// Exact expected losses for connected acyclic undirected models in
// O(n) time by two-pass rerooting.
ExpectedLossVector tree_expected_losses(const CascadeModel& model);

class NotATreeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

UtilityMatrices build_utility_matrices(const ExpectedLossVector& losses,
                                       const ConfigurationSet& configs, bool zero_sum);

}  // namespace interdep
