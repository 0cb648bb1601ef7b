#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "interdep/scenario.hpp"

namespace interdep {

enum class SweepKind { Cost, Noise, Density, Mu, Failure, Configs, Samples };

SweepKind sweep_kind_from_name(const std::string& name);
std::string sweep_kind_name(SweepKind kind);
std::vector<double> default_sweep_values(SweepKind kind);

struct SweepSpec {
    SweepKind kind = SweepKind::Cost;
    std::vector<double> values;  // empty = kind defaults
    int replications = 100;
    int samples = 10000;
    std::uint64_t master_seed = 1;
    Scenario base;
    double fixed_cost = 0.04;        // density sweep deployment cost
    std::vector<double> cost_grid;   // inner grid for the mu sweep; empty = defaults
    std::optional<double> heuristic_budget;  // default: the optimum's realized spend
};

// One replication of one method at one parameter value. neg_utility =
// exp_loss + exp_cost exactly by construction.
struct SweepRow {
    double param = 0.0;
    std::string method;
    int seed = 0;
    double exp_loss = 0.0;
    double exp_cost = 0.0;
    double neg_utility = 0.0;
    double solve_ms = 0.0;
    double sample_ms = 0.0;
    bool failed = false;
    std::string error;
};

struct SweepTable {
    std::string name;
    std::vector<SweepRow> rows;  // canonical (param, method, seed) order

    // param,method,seed,exp_loss,exp_cost,neg_utility,solve_ms,sample_ms
    std::string rows_csv(bool include_timings = true) const;
    // mean and standard error over replications per (param, method)
    std::string aggregate_csv() const;
};

struct SweepResult {
    std::vector<SweepTable> tables;
};

SweepResult run_cost_sweep(const SweepSpec& spec);
SweepResult run_noise_sweep(const SweepSpec& spec);
SweepResult run_density_sweep(const SweepSpec& spec);
SweepResult run_mu_sweep(const SweepSpec& spec);
SweepResult run_failure_mode_comparison(const SweepSpec& spec);
SweepResult run_config_menu_comparison(const SweepSpec& spec);
SweepResult run_sampling_sufficiency(const SweepSpec& spec);
SweepResult run_sweep(const SweepSpec& spec);

// Writes <prefix><table>_rows.csv and <prefix><table>_agg.csv under
// out_dir, creating it if needed. Scenario inputs are never touched.
void write_sweep_csv(const SweepResult& result, const std::string& out_dir,
                     const std::string& prefix = "");

}  // namespace interdep
