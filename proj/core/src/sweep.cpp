#include "interdep/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "interdep/baselines.hpp"
#include "interdep/parallel.hpp"

namespace interdep {

namespace {

constexpr int kReferenceSamples = 100000;  // sampling-sufficiency yardstick
constexpr double kDefaultMenuCost = 0.2;   // fallback two-option menu for noise/samples sweeps

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Per-replication seeds; depend only on (master_seed, rep) so any row
// regenerates from (scenario, seed, param) regardless of sweep layout.
struct RepSeeds {
    std::uint64_t graph;
    std::uint64_t worth;
    std::uint64_t sample;
    std::uint64_t reference;
};

RepSeeds rep_seeds(std::uint64_t master, int rep) {
    const auto r = static_cast<std::uint64_t>(rep);
    return {substream_seed(master, r, 0), substream_seed(master, r, 1),
            substream_seed(master, r, 2), substream_seed(master, r, 3)};
}

DependencyGraph make_rep_graph(const Scenario& base, const RepSeeds& seeds) {
    DependencyGraph graph = base.graph.realize(seeds.graph);
    WorthAssignment w = base.worths;
    if (w.mode == WorthAssignment::Mode::Uniform01) w.seed = seeds.worth;
    return assign_worths(std::move(graph), w);
}

std::vector<ConfigurationSet::Option> two_option_menu(double c) {
    return {{0.0, 1.0}, {c, 0.0}};
}

std::vector<ConfigurationSet::Option> scenario_menu_or_default(const Scenario& base) {
    if (!base.menu.empty()) return base.menu;
    if (!base.per_target_menus.empty())
        throw std::invalid_argument("this sweep needs a uniform configuration menu");
    return two_option_menu(kDefaultMenuCost);
}

SolveOptions scenario_options(const Scenario& base) {
    SolveOptions options;
    options.budget = base.budget;
    options.budget_mode = base.budget_mode;
    return options;
}

SweepRow make_row(double param, std::string method, int rep, const PolicyEvaluation& eval,
                  double solve_ms, double sample_ms) {
    SweepRow row;
    row.param = param;
    row.method = std::move(method);
    row.seed = rep;
    row.exp_loss = eval.expected_loss;
    row.exp_cost = eval.expected_cost;
    row.neg_utility = eval.expected_loss + eval.expected_cost;
    row.solve_ms = solve_ms;
    row.sample_ms = sample_ms;
    return row;
}

SweepRow failed_row(double param, std::string method, int rep, const std::string& error) {
    SweepRow row;
    row.param = param;
    row.method = std::move(method);
    row.seed = rep;
    row.failed = true;
    row.error = error;
    return row;
}

// Slot grid filled by parallel replications, then read out in canonical
// (param, method, seed) order.
class RowGrid {
public:
    RowGrid(std::size_t params, std::size_t methods, std::size_t reps)
        : methods_(methods), reps_(reps), rows_(params * methods * reps) {}

    SweepRow& at(std::size_t param, std::size_t method, std::size_t rep) {
        return rows_[(param * methods_ + method) * reps_ + rep];
    }
    std::vector<SweepRow> canonical() const { return rows_; }

private:
    std::size_t methods_;
    std::size_t reps_;
    std::vector<SweepRow> rows_;
};

void mark_rep_failed(RowGrid& grid, const std::vector<double>& params,
                     const std::vector<std::string>& methods, int rep, const std::string& error) {
    for (std::size_t p = 0; p < params.size(); ++p)
        for (std::size_t m = 0; m < methods.size(); ++m)
            grid.at(p, m, static_cast<std::size_t>(rep)) =
                failed_row(params[p], methods[m], rep, error);
}

std::vector<double> values_or_default(const SweepSpec& spec) {
    if (!spec.values.empty()) return spec.values;
    return default_sweep_values(spec.kind);
}

}  // namespace

SweepKind sweep_kind_from_name(const std::string& name) {
    if (name == "cost") return SweepKind::Cost;
    if (name == "noise") return SweepKind::Noise;
    if (name == "density") return SweepKind::Density;
    if (name == "mu") return SweepKind::Mu;
    if (name == "failure") return SweepKind::Failure;
    if (name == "configs") return SweepKind::Configs;
    if (name == "samples") return SweepKind::Samples;
    throw std::invalid_argument("unknown sweep kind '" + name + "'");
}

std::string sweep_kind_name(SweepKind kind) {
    switch (kind) {
        case SweepKind::Cost: return "cost";
        case SweepKind::Noise: return "noise";
        case SweepKind::Density: return "density";
        case SweepKind::Mu: return "mu";
        case SweepKind::Failure: return "failure";
        case SweepKind::Configs: return "configs";
        case SweepKind::Samples: return "samples";
    }
    throw std::logic_error("unreachable");
}

std::vector<double> default_sweep_values(SweepKind kind) {
    switch (kind) {
        case SweepKind::Cost:
        case SweepKind::Failure:
        case SweepKind::Configs: {
            std::vector<double> grid{0.0};
            for (int i = 0; i < 20; ++i)
                grid.push_back(0.005 * std::pow(16000.0, i / 19.0));
            return grid;
        }
        case SweepKind::Noise:
            return {0.0, 0.001, 0.005, 0.01, 0.05, 0.1};
        case SweepKind::Density:
            return {0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0};
        case SweepKind::Mu:
            return {0.0, 0.5, 1.0, 2.0};
        case SweepKind::Samples:
            return {0.0, 10.0, 100.0, 1000.0, 10000.0};
    }
    throw std::logic_error("unreachable");
}

std::string SweepTable::rows_csv(bool include_timings) const {
    std::ostringstream out;
    out << "param,method,seed,exp_loss,exp_cost,neg_utility";
    if (include_timings) out << ",solve_ms,sample_ms";
    out << "\n";
    for (const auto& row : rows) {
        if (row.failed) {
            out << "# FAILED param=" << fmt(row.param) << " method=" << row.method
                << " seed=" << row.seed << ": " << row.error << "\n";
            continue;
        }
        out << fmt(row.param) << "," << row.method << "," << row.seed << ","
            << fmt(row.exp_loss) << "," << fmt(row.exp_cost) << "," << fmt(row.neg_utility);
        if (include_timings) {
            char buf[64];
            std::snprintf(buf, sizeof buf, ",%.3f,%.3f", row.solve_ms, row.sample_ms);
            out << buf;
        }
        out << "\n";
    }
    return out.str();
}

std::string SweepTable::aggregate_csv() const {
    std::ostringstream out;
    out << "param,method,replications,mean_exp_loss,stderr_exp_loss,mean_exp_cost,"
           "stderr_exp_cost,mean_neg_utility,stderr_neg_utility\n";
    // rows arrive grouped by (param, method)
    std::size_t i = 0;
    while (i < rows.size()) {
        const double param = rows[i].param;
        const std::string& method = rows[i].method;
        double sum[3] = {0, 0, 0}, sumsq[3] = {0, 0, 0};
        int count = 0;
        std::size_t j = i;
        for (; j < rows.size() && rows[j].param == param && rows[j].method == method; ++j) {
            if (rows[j].failed) continue;
            const double vals[3] = {rows[j].exp_loss, rows[j].exp_cost, rows[j].neg_utility};
            for (int k = 0; k < 3; ++k) {
                sum[k] += vals[k];
                sumsq[k] += vals[k] * vals[k];
            }
            ++count;
        }
        out << fmt(param) << "," << method << "," << count;
        for (int k = 0; k < 3; ++k) {
            const double mean = count > 0 ? sum[k] / count : 0.0;
            double se = 0.0;
            if (count > 1) {
                const double var =
                    std::max(0.0, (sumsq[k] / count - mean * mean) * count / (count - 1.0));
                se = std::sqrt(var / count);
            }
            out << "," << fmt(mean) << "," << fmt(se);
        }
        out << "\n";
        i = j;
    }
    return out.str();
}

SweepResult run_cost_sweep(const SweepSpec& spec) {
    const std::vector<double> costs = values_or_default(spec);
    const std::vector<std::string> methods{"optimal", "independence", "degree_heuristic"};
    RowGrid grid(costs.size(), methods.size(), static_cast<std::size_t>(spec.replications));
    const SolveOptions options = scenario_options(spec.base);

    parallel_for_blocks(static_cast<std::size_t>(spec.replications), [&](std::size_t rep) {
        const int k = static_cast<int>(rep);
        try {
            const RepSeeds seeds = rep_seeds(spec.master_seed, k);
            const DependencyGraph graph = make_rep_graph(spec.base, seeds);
            const CascadeModel model = scenario_model(graph, spec.base);
            const auto t0 = Clock::now();
            const ExpectedLossVector losses =
                estimate_component_losses(model, spec.samples, seeds.sample);
            const double sample_ms = ms_since(t0);
            // betas are shared by every cost point, so one utility build serves all
            const ConfigurationSet beta_configs =
                ConfigurationSet::uniform(graph.size(), two_option_menu(0.0));
            const UtilityMatrices utilities =
                build_utility_matrices(losses, beta_configs, spec.base.zero_sum);
            for (std::size_t p = 0; p < costs.size(); ++p) {
                const ConfigurationSet configs =
                    ConfigurationSet::uniform(graph.size(), two_option_menu(costs[p]));
                const GamePriors priors = spec.base.priors(graph.size());

                const auto t1 = Clock::now();
                const SolveResult solved = solve_multiple_lp(utilities, configs, priors, options);
                const double solve_ms = ms_since(t1);
                const PolicyEvaluation opt_eval =
                    evaluate_policy(solved.policy, utilities, configs, priors);
                grid.at(p, 0, rep) =
                    make_row(costs[p], methods[0], k, opt_eval, solve_ms, sample_ms);

                const auto t2 = Clock::now();
                const DefensePolicy indep =
                    independence_policy(graph, configs, priors, spec.base.zero_sum, options);
                grid.at(p, 1, rep) =
                    make_row(costs[p], methods[1], k,
                             evaluate_policy(indep, utilities, configs, priors), ms_since(t2),
                             sample_ms);

                const double budget = spec.heuristic_budget.value_or(opt_eval.expected_cost);
                const auto t3 = Clock::now();
                const DefensePolicy heuristic = degree_heuristic_policy(graph, configs, budget);
                grid.at(p, 2, rep) =
                    make_row(costs[p], methods[2], k,
                             evaluate_policy(heuristic, utilities, configs, priors), ms_since(t3),
                             sample_ms);
            }
        } catch (const std::exception& e) {
            mark_rep_failed(grid, costs, methods, k, e.what());
        }
    });

    SweepResult result;
    result.tables.push_back({"cost", grid.canonical()});
    return result;
}

SweepResult run_noise_sweep(const SweepSpec& spec) {
    const std::vector<double> epsilons = values_or_default(spec);
    const std::vector<std::string> methods{"optimal"};
    RowGrid grid(epsilons.size(), methods.size(), static_cast<std::size_t>(spec.replications));
    const SolveOptions options = scenario_options(spec.base);
    const std::vector<ConfigurationSet::Option> menu = scenario_menu_or_default(spec.base);
    const double base_p =
        spec.base.noise ? spec.base.noise->base_p : spec.base.graph.cascade_prob;

    parallel_for_blocks(static_cast<std::size_t>(spec.replications), [&](std::size_t rep) {
        const int k = static_cast<int>(rep);
        try {
            const RepSeeds seeds = rep_seeds(spec.master_seed, k);
            const DependencyGraph graph = make_rep_graph(spec.base, seeds);
            const ConfigurationSet configs = ConfigurationSet::uniform(graph.size(), menu);
            const GamePriors priors = spec.base.priors(graph.size());
            for (std::size_t p = 0; p < epsilons.size(); ++p) {
                const CascadeModel model = apply_edge_noise(graph, epsilons[p], base_p);
                const auto t0 = Clock::now();
                const ExpectedLossVector losses =
                    estimate_component_losses(model, spec.samples, seeds.sample);
                const double sample_ms = ms_since(t0);
                const UtilityMatrices utilities =
                    build_utility_matrices(losses, configs, spec.base.zero_sum);
                const auto t1 = Clock::now();
                const SolveResult solved = solve_multiple_lp(utilities, configs, priors, options);
                grid.at(p, 0, rep) = make_row(
                    epsilons[p], methods[0], k,
                    evaluate_policy(solved.policy, utilities, configs, priors), ms_since(t1),
                    sample_ms);
            }
        } catch (const std::exception& e) {
            mark_rep_failed(grid, epsilons, methods, k, e.what());
        }
    });

    SweepResult result;
    result.tables.push_back({"noise", grid.canonical()});
    return result;
}

SweepResult run_density_sweep(const SweepSpec& spec) {
    if (spec.base.graph.model != GraphSpec::Model::ErdosRenyi)
        throw std::invalid_argument("the density sweep varies an Erdos-Renyi edge probability; "
                                    "the scenario graph must be an 'er' generator");
    const std::vector<double> degrees = values_or_default(spec);
    const std::vector<std::string> methods{"optimal"};
    RowGrid grid(degrees.size(), methods.size(), static_cast<std::size_t>(spec.replications));
    const SolveOptions options = scenario_options(spec.base);
    const int n = spec.base.graph.n;

    parallel_for_blocks(static_cast<std::size_t>(spec.replications), [&](std::size_t rep) {
        const int k = static_cast<int>(rep);
        try {
            const RepSeeds seeds = rep_seeds(spec.master_seed, k);
            for (std::size_t p = 0; p < degrees.size(); ++p) {
                Scenario point = spec.base;
                point.graph.edge_prob = std::min(1.0, degrees[p] / (n - 1));
                const DependencyGraph graph = make_rep_graph(point, seeds);
                const CascadeModel model = scenario_model(graph, point);
                const auto t0 = Clock::now();
                const ExpectedLossVector losses =
                    estimate_component_losses(model, spec.samples, seeds.sample);
                const double sample_ms = ms_since(t0);
                const ConfigurationSet configs =
                    ConfigurationSet::uniform(n, two_option_menu(spec.fixed_cost));
                const GamePriors priors = point.priors(n);
                const UtilityMatrices utilities =
                    build_utility_matrices(losses, configs, point.zero_sum);
                const auto t1 = Clock::now();
                const SolveResult solved = solve_multiple_lp(utilities, configs, priors, options);
                grid.at(p, 0, rep) = make_row(
                    degrees[p], methods[0], k,
                    evaluate_policy(solved.policy, utilities, configs, priors), ms_since(t1),
                    sample_ms);
            }
        } catch (const std::exception& e) {
            mark_rep_failed(grid, degrees, methods, k, e.what());
        }
    });

    SweepResult result;
    result.tables.push_back({"density", grid.canonical()});
    return result;
}

namespace {

// Inner cost series shared by the mu sweep's PA tables and its ER
// reference table.
SweepTable run_cost_series(const SweepSpec& spec, const std::string& name,
                           const GraphSpec& graph_spec, const std::vector<double>& costs) {
    const std::vector<std::string> methods{"optimal"};
    RowGrid grid(costs.size(), methods.size(), static_cast<std::size_t>(spec.replications));
    const SolveOptions options = scenario_options(spec.base);

    parallel_for_blocks(static_cast<std::size_t>(spec.replications), [&](std::size_t rep) {
        const int k = static_cast<int>(rep);
        try {
            const RepSeeds seeds = rep_seeds(spec.master_seed, k);
            Scenario point = spec.base;
            point.graph = graph_spec;
            const DependencyGraph graph = make_rep_graph(point, seeds);
            const CascadeModel model = scenario_model(graph, point);
            const auto t0 = Clock::now();
            const ExpectedLossVector losses =
                estimate_component_losses(model, spec.samples, seeds.sample);
            const double sample_ms = ms_since(t0);
            const ConfigurationSet beta_configs =
                ConfigurationSet::uniform(graph.size(), two_option_menu(0.0));
            const UtilityMatrices utilities =
                build_utility_matrices(losses, beta_configs, point.zero_sum);
            const GamePriors priors = point.priors(graph.size());
            for (std::size_t p = 0; p < costs.size(); ++p) {
                const ConfigurationSet configs =
                    ConfigurationSet::uniform(graph.size(), two_option_menu(costs[p]));
                const auto t1 = Clock::now();
                const SolveResult solved = solve_multiple_lp(utilities, configs, priors, options);
                grid.at(p, 0, rep) = make_row(
                    costs[p], methods[0], k,
                    evaluate_policy(solved.policy, utilities, configs, priors), ms_since(t1),
                    sample_ms);
            }
        } catch (const std::exception& e) {
            mark_rep_failed(grid, costs, methods, k, e.what());
        }
    });
    return {name, grid.canonical()};
}

std::string mu_label(double mu) {
    std::string label = fmt(mu);
    for (auto& c : label)
        if (c == '.') c = 'p';
    return label;
}

}  // namespace

SweepResult run_mu_sweep(const SweepSpec& spec) {
    if (spec.base.graph.model != GraphSpec::Model::PrefAttach)
        throw std::invalid_argument("the mu sweep varies preferential attachment; the scenario "
                                    "graph must be a 'pa' generator");
    const std::vector<double> mus = values_or_default(spec);
    const std::vector<double> costs =
        spec.cost_grid.empty() ? default_sweep_values(SweepKind::Cost) : spec.cost_grid;

    SweepResult result;
    for (double mu : mus) {
        GraphSpec pa = spec.base.graph;
        pa.mu = mu;
        result.tables.push_back(run_cost_series(spec, "mu_" + mu_label(mu), pa, costs));
    }
    // ER reference at the same expected average degree (2m)
    GraphSpec er;
    er.model = GraphSpec::Model::ErdosRenyi;
    er.n = spec.base.graph.n;
    er.cascade_prob = spec.base.graph.cascade_prob;
    er.edge_prob = std::min(1.0, 2.0 * spec.base.graph.attach_count / (er.n - 1));
    result.tables.push_back(run_cost_series(spec, "mu_er_ref", er, costs));
    return result;
}

SweepResult run_failure_mode_comparison(const SweepSpec& spec) {
    const std::vector<double> costs = values_or_default(spec);
    const std::vector<std::string> methods{"optimal", "attack_only"};
    RowGrid grid(costs.size(), methods.size(), static_cast<std::size_t>(spec.replications));
    const SolveOptions options = scenario_options(spec.base);

    parallel_for_blocks(static_cast<std::size_t>(spec.replications), [&](std::size_t rep) {
        const int k = static_cast<int>(rep);
        try {
            const RepSeeds seeds = rep_seeds(spec.master_seed, k);
            const DependencyGraph graph = make_rep_graph(spec.base, seeds);
            const CascadeModel model = scenario_model(graph, spec.base);
            const auto t0 = Clock::now();
            const ExpectedLossVector losses =
                estimate_component_losses(model, spec.samples, seeds.sample);
            const double sample_ms = ms_since(t0);
            const ConfigurationSet beta_configs =
                ConfigurationSet::uniform(graph.size(), two_option_menu(0.0));
            const UtilityMatrices utilities =
                build_utility_matrices(losses, beta_configs, spec.base.zero_sum);
            const GamePriors true_priors = spec.base.priors(graph.size());
            GamePriors attack_priors = true_priors;
            attack_priors.r = 1.0;
            for (std::size_t p = 0; p < costs.size(); ++p) {
                const ConfigurationSet configs =
                    ConfigurationSet::uniform(graph.size(), two_option_menu(costs[p]));

                const auto t1 = Clock::now();
                const SolveResult optimal =
                    solve_multiple_lp(utilities, configs, true_priors, options);
                grid.at(p, 0, rep) = make_row(
                    costs[p], methods[0], k,
                    evaluate_policy(optimal.policy, utilities, configs, true_priors),
                    ms_since(t1), sample_ms);

                const auto t2 = Clock::now();
                const SolveResult assumed =
                    solve_multiple_lp(utilities, configs, attack_priors, options);
                grid.at(p, 1, rep) = make_row(
                    costs[p], methods[1], k,
                    evaluate_policy(assumed.policy, utilities, configs, true_priors),
                    ms_since(t2), sample_ms);
            }
        } catch (const std::exception& e) {
            mark_rep_failed(grid, costs, methods, k, e.what());
        }
    });

    SweepResult result;
    result.tables.push_back({"failure", grid.canonical()});
    return result;
}

SweepResult run_config_menu_comparison(const SweepSpec& spec) {
    const std::vector<double> costs = values_or_default(spec);
    struct Variant {
        std::string name;
        double extra_beta;  // < 0 = plain two-option menu
    };
    const std::vector<Variant> variants{
        {"configs2", -1.0}, {"configs3_50", 0.5}, {"configs3_75", 0.25}};
    const std::vector<std::string> methods{"optimal"};
    const SolveOptions options = scenario_options(spec.base);

    std::vector<RowGrid> grids;
    grids.reserve(variants.size());
    for (std::size_t i = 0; i < variants.size(); ++i)
        grids.emplace_back(costs.size(), methods.size(),
                           static_cast<std::size_t>(spec.replications));

    parallel_for_blocks(static_cast<std::size_t>(spec.replications), [&](std::size_t rep) {
        const int k = static_cast<int>(rep);
        try {
            const RepSeeds seeds = rep_seeds(spec.master_seed, k);
            const DependencyGraph graph = make_rep_graph(spec.base, seeds);
            const CascadeModel model = scenario_model(graph, spec.base);
            const auto t0 = Clock::now();
            const ExpectedLossVector losses =
                estimate_component_losses(model, spec.samples, seeds.sample);
            const double sample_ms = ms_since(t0);
            const GamePriors priors = spec.base.priors(graph.size());
            for (std::size_t v = 0; v < variants.size(); ++v) {
                for (std::size_t p = 0; p < costs.size(); ++p) {
                    std::vector<ConfigurationSet::Option> menu = two_option_menu(costs[p]);
                    if (variants[v].extra_beta >= 0.0)
                        menu.push_back({costs[p] / 8.0, variants[v].extra_beta});
                    const ConfigurationSet configs =
                        ConfigurationSet::uniform(graph.size(), menu);
                    const UtilityMatrices utilities =
                        build_utility_matrices(losses, configs, spec.base.zero_sum);
                    const auto t1 = Clock::now();
                    const SolveResult solved =
                        solve_multiple_lp(utilities, configs, priors, options);
                    grids[v].at(p, 0, rep) = make_row(
                        costs[p], methods[0], k,
                        evaluate_policy(solved.policy, utilities, configs, priors), ms_since(t1),
                        sample_ms);
                }
            }
        } catch (const std::exception& e) {
            for (std::size_t v = 0; v < variants.size(); ++v)
                mark_rep_failed(grids[v], costs, methods, k, e.what());
        }
    });

    SweepResult result;
    for (std::size_t v = 0; v < variants.size(); ++v)
        result.tables.push_back({variants[v].name, grids[v].canonical()});
    return result;
}

SweepResult run_sampling_sufficiency(const SweepSpec& spec) {
    const std::vector<double> sample_counts = values_or_default(spec);
    const std::vector<std::string> methods{"optimal"};
    RowGrid grid(sample_counts.size(), methods.size(),
                 static_cast<std::size_t>(spec.replications));
    const SolveOptions options = scenario_options(spec.base);
    const std::vector<ConfigurationSet::Option> menu = scenario_menu_or_default(spec.base);

    parallel_for_blocks(static_cast<std::size_t>(spec.replications), [&](std::size_t rep) {
        const int k = static_cast<int>(rep);
        try {
            const RepSeeds seeds = rep_seeds(spec.master_seed, k);
            const DependencyGraph graph = make_rep_graph(spec.base, seeds);
            const CascadeModel model = scenario_model(graph, spec.base);
            const ConfigurationSet configs = ConfigurationSet::uniform(graph.size(), menu);
            const GamePriors priors = spec.base.priors(graph.size());
            const auto t0 = Clock::now();
            const ExpectedLossVector reference =
                estimate_component_losses(model, kReferenceSamples, seeds.reference);
            const double reference_ms = ms_since(t0);
            const UtilityMatrices true_utilities =
                build_utility_matrices(reference, configs, spec.base.zero_sum);
            for (std::size_t p = 0; p < sample_counts.size(); ++p) {
                const int count = static_cast<int>(sample_counts[p]);
                DefensePolicy policy;
                double sample_ms = reference_ms;
                double solve_ms = 0.0;
                if (count == 0) {
                    // zero samples means worth-only utilities
                    const auto t1 = Clock::now();
                    policy = independence_policy(graph, configs, priors, spec.base.zero_sum,
                                                 options);
                    solve_ms = ms_since(t1);
                } else {
                    const auto t1 = Clock::now();
                    const ExpectedLossVector losses =
                        estimate_component_losses(model, count, seeds.sample);
                    sample_ms += ms_since(t1);
                    const UtilityMatrices utilities =
                        build_utility_matrices(losses, configs, spec.base.zero_sum);
                    const auto t2 = Clock::now();
                    policy = solve_multiple_lp(utilities, configs, priors, options).policy;
                    solve_ms = ms_since(t2);
                }
                grid.at(p, 0, rep) = make_row(
                    sample_counts[p], methods[0], k,
                    evaluate_policy(policy, true_utilities, configs, priors), solve_ms,
                    sample_ms);
            }
        } catch (const std::exception& e) {
            mark_rep_failed(grid, sample_counts, methods, k, e.what());
        }
    });

    SweepResult result;
    result.tables.push_back({"samples", grid.canonical()});
    return result;
}

SweepResult run_sweep(const SweepSpec& spec) {
    switch (spec.kind) {
        case SweepKind::Cost: return run_cost_sweep(spec);
        case SweepKind::Noise: return run_noise_sweep(spec);
        case SweepKind::Density: return run_density_sweep(spec);
        case SweepKind::Mu: return run_mu_sweep(spec);
        case SweepKind::Failure: return run_failure_mode_comparison(spec);
        case SweepKind::Configs: return run_config_menu_comparison(spec);
        case SweepKind::Samples: return run_sampling_sufficiency(spec);
    }
    throw std::logic_error("unreachable");
}

void write_sweep_csv(const SweepResult& result, const std::string& out_dir,
                     const std::string& prefix) {
    std::filesystem::create_directories(out_dir);
    for (const auto& table : result.tables) {
        const auto stem = std::filesystem::path(out_dir) / (prefix + table.name);
        {
            std::ofstream rows(stem.string() + "_rows.csv", std::ios::binary);
            if (!rows) throw ParseError(stem.string() + "_rows.csv: cannot open for writing");
            rows << table.rows_csv();
        }
        {
            std::ofstream agg(stem.string() + "_agg.csv", std::ios::binary);
            if (!agg) throw ParseError(stem.string() + "_agg.csv: cannot open for writing");
            agg << table.aggregate_csv();
        }
    }
}

}  // namespace interdep
