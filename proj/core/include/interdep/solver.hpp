#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "interdep/cascade.hpp"

namespace interdep {

// Attack prior r and the conditional random-failure distribution g.
struct GamePriors {
    double r = 1.0;
    std::vector<double> g;

    static GamePriors uniform(int n, double r = 1.0);
    void validate(int n) const;
};

// q[o,t] = probability configuration o is deployed at target t.
struct DefensePolicy {
    int num_options = 0;
    int num_targets = 0;
    std::vector<double> q;  // num_options x num_targets, row-major

    static DefensePolicy zeros(int num_options, int num_targets);
    double prob(int option, TargetId t) const {
        return q[static_cast<std::size_t>(option) * num_targets + t];
    }
    double& prob(int option, TargetId t) {
        return q[static_cast<std::size_t>(option) * num_targets + t];
    }
    // Expected deployment cost under the given configuration costs.
    double expected_cost(const ConfigurationSet& configs) const;
};

enum class LpBackend {
    Auto,        // separable parametric solve when no budget couples targets
    Parametric,  // force the separable path (rejects budgets)
    Simplex,     // force the dense simplex
};

enum class BudgetMode { Total, PerTarget };

struct SolveOptions {
    std::optional<double> budget;
    BudgetMode budget_mode = BudgetMode::Total;
    bool disable_r0_shortcircuit = false;
    LpBackend backend = LpBackend::Auto;
};

struct FixedTargetOutcome {
    bool feasible = false;
    double objective = 0.0;
};

struct FixedTargetSolution {
    bool feasible = false;
    double objective = 0.0;
    DefensePolicy policy;
};

struct SolveResult {
    DefensePolicy policy;
    double objective = 0.0;
    TargetId attacked_target = 0;
    std::vector<FixedTargetOutcome> per_lp;  // empty when short-circuited
    bool shortcircuit_r0 = false;
    double solve_ms = 0.0;
};

struct PolicyEvaluation {
    double defender_utility = 0.0;
    TargetId attacker_target = 0;
    double expected_cost = 0.0;
    double expected_loss = 0.0;  // -(utility + cost): the pure loss term
};

// Raised when the simplex reports a numerical failure, as distinct from
// ordinary per-target infeasibility.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when every fixed-target LP is infeasible (possible only with a
// budget below the cheapest configuration profile).
class NoFeasibleTargetError : public SolverError {
public:
    using SolverError::SolverError;
};

// One LP of the multiple-LP method: maximize the defender objective
// subject to policy constraints and "attacking t_hat is weakly optimal".
FixedTargetSolution solve_fixed_target_lp(const UtilityMatrices& utilities,
                                          const ConfigurationSet& configs,
                                          const GamePriors& priors, TargetId t_hat,
                                          const SolveOptions& options = {});

// Runs the fixed-target LP for every candidate target and returns the
// best feasible solution; ties broken by lowest target index.
SolveResult solve_multiple_lp(const UtilityMatrices& utilities, const ConfigurationSet& configs,
                              const GamePriors& priors, const SolveOptions& options = {});

// Attacker best response (ties favor the defender, then lowest index)
// and the defender utility at it.
PolicyEvaluation evaluate_policy(const DefensePolicy& policy, const UtilityMatrices& utilities,
                                 const ConfigurationSet& configs, const GamePriors& priors);

}  // namespace interdep
