#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "interdep/cascade.hpp"
#include "interdep/graph.hpp"
#include "interdep/solver.hpp"

namespace interdep {

// Where a scenario's graph comes from. Generator specs are kept
// symbolic so sweeps can redraw them per replication seed.
struct GraphSpec {
    enum class Model { ErdosRenyi, PrefAttach, Fixed };
    Model model = Model::Fixed;
    int n = 0;
    double edge_prob = 0.0;      // ErdosRenyi
    int attach_count = 1;        // PrefAttach
    double mu = 1.0;             // PrefAttach
    double cascade_prob = 0.5;   // generators
    bool directed = false;
    std::uint64_t seed = 0;      // used when a sweep does not override it
    DependencyGraph fixed;       // Fixed: file or inline edges

    DependencyGraph realize(std::uint64_t seed_override) const;
    DependencyGraph realize() const { return realize(seed); }
};

struct NoiseSpec {
    double epsilon = 0.0;
    double base_p = 0.5;
};

struct Scenario {
    GraphSpec graph;
    WorthAssignment worths;
    std::vector<ConfigurationSet::Option> menu;  // uniform menu, empty if per-target
    std::vector<std::vector<ConfigurationSet::Option>> per_target_menus;
    double prior_r = 1.0;
    std::vector<double> prior_g;  // empty = uniform
    bool zero_sum = true;
    std::optional<double> budget;
    BudgetMode budget_mode = BudgetMode::Total;
    std::optional<NoiseSpec> noise;
    int samples = 10000;

    ConfigurationSet configurations(int n) const;
    GamePriors priors(int n) const;
};

// JSON document with keys graph, worths, configurations, priors,
// budget, zero_sum, noise, samples; schema documented in the README.
// Relative file paths resolve against base_dir.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario_json(const std::string& text, const std::string& base_dir,
                             const std::string& origin = "<string>");

// Builds the cascade model the scenario describes (dense when noisy).
CascadeModel scenario_model(const DependencyGraph& graph, const Scenario& scenario);

// SolveResult as a JSON document: policy matrix, objective, attacked
// target, per-LP statuses, wall time.
std::string solve_result_to_json(const SolveResult& result, double sample_ms = 0.0);
std::string losses_to_json(const ExpectedLossVector& losses);
std::string evaluation_to_json(const PolicyEvaluation& eval, const DefensePolicy& policy);

}  // namespace interdep
