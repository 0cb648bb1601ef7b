// Experiment front end: graph generation, expected-loss estimation,
// Stackelberg solves, baselines, and the parameter sweeps.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "interdep/baselines.hpp"
#include "interdep/parallel.hpp"
#include "interdep/scenario.hpp"
#include "interdep/sweep.hpp"

namespace {

using namespace interdep;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ParseError(path + ": cannot open for writing");
    out << text;
}

struct CommonFlags {
    std::string scenario_path;
    int samples = -1;  // -1 = scenario default
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
};

struct LoadedScenario {
    Scenario scenario;
    DependencyGraph graph;
    ConfigurationSet configs;
    GamePriors priors;
    CascadeModel model;
    int samples;
};

LoadedScenario prepare(const CommonFlags& flags) {
    Scenario scenario = load_scenario(flags.scenario_path);
    DependencyGraph graph = assign_worths(scenario.graph.realize(), scenario.worths);
    ConfigurationSet configs = scenario.configurations(graph.size());
    GamePriors priors = scenario.priors(graph.size());
    CascadeModel model = scenario_model(graph, scenario);
    const int samples = flags.samples > 0 ? flags.samples : scenario.samples;
    return {std::move(scenario), std::move(graph), std::move(configs), std::move(priors),
            std::move(model), samples};
}

double run_ms(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

int cmd_gen(const std::string& model, int n, double p, int m, double mu, double cascade_prob,
            bool directed, std::uint64_t seed, const std::string& out,
            const std::string& worth_mode, double worth_value, const std::string& worth_out) {
    DependencyGraph graph;
    if (model == "er") {
        graph = generate_erdos_renyi(n, p, seed, directed, cascade_prob);
    } else if (model == "pa") {
        graph = generate_preferential_attachment(n, m, mu, seed, cascade_prob);
    } else {
        std::cerr << "gen: unknown model '" << model << "' (expected er or pa)\n";
        return kExitUsage;
    }
    if (worth_mode != "none") {
        WorthAssignment w;
        if (worth_mode == "uniform01") {
            w.mode = WorthAssignment::Mode::Uniform01;
            w.seed = seed + 1;
        } else if (worth_mode == "constant") {
            w.mode = WorthAssignment::Mode::Constant;
            w.value = worth_value;
        } else {
            std::cerr << "gen: unknown worth mode '" << worth_mode << "'\n";
            return kExitUsage;
        }
        graph = assign_worths(std::move(graph), w);
    }
    save_edge_list(graph, out);
    if (!worth_out.empty()) save_worths_file(graph, worth_out);
    std::cerr << "wrote " << graph.size() << " targets, " << graph.edges().size()
              << " edges to " << out << "\n";
    return kExitOk;
}

int cmd_losses(const CommonFlags& flags, bool exact_tree) {
    LoadedScenario loaded = prepare(flags);
    ExpectedLossVector losses;
    if (exact_tree)
        losses = tree_expected_losses(loaded.model);
    else
        losses = estimate_component_losses(loaded.model, loaded.samples, flags.seed);
    write_output(flags.format == "json" ? losses_to_json(losses) : losses.to_csv(), flags.out);
    return kExitOk;
}

int cmd_solve(const CommonFlags& flags, bool disable_shortcircuit) {
    LoadedScenario loaded = prepare(flags);
    ExpectedLossVector losses;
    const double sample_ms = run_ms([&] {
        losses = estimate_component_losses(loaded.model, loaded.samples, flags.seed);
    });
    const UtilityMatrices utilities =
        build_utility_matrices(losses, loaded.configs, loaded.scenario.zero_sum);
    SolveOptions options;
    options.budget = loaded.scenario.budget;
    options.budget_mode = loaded.scenario.budget_mode;
    options.disable_r0_shortcircuit = disable_shortcircuit;
    const SolveResult result =
        solve_multiple_lp(utilities, loaded.configs, loaded.priors, options);
    write_output(solve_result_to_json(result, sample_ms), flags.out);
    return kExitOk;
}

int cmd_baseline(const CommonFlags& flags, const std::string& method,
                 std::optional<double> budget) {
    LoadedScenario loaded = prepare(flags);
    const ExpectedLossVector losses =
        estimate_component_losses(loaded.model, loaded.samples, flags.seed);
    const UtilityMatrices utilities =
        build_utility_matrices(losses, loaded.configs, loaded.scenario.zero_sum);
    SolveOptions options;
    options.budget = loaded.scenario.budget;
    options.budget_mode = loaded.scenario.budget_mode;

    DefensePolicy policy;
    if (method == "independence") {
        policy = independence_policy(loaded.graph, loaded.configs, loaded.priors,
                                     loaded.scenario.zero_sum, options);
    } else if (method == "degree") {
        double b;
        if (budget) {
            b = *budget;
        } else {
            // default: give the heuristic the optimum's realized spend
            const SolveResult optimal =
                solve_multiple_lp(utilities, loaded.configs, loaded.priors, options);
            b = evaluate_policy(optimal.policy, utilities, loaded.configs, loaded.priors)
                    .expected_cost;
        }
        policy = degree_heuristic_policy(loaded.graph, loaded.configs, b);
    } else {
        std::cerr << "baseline: unknown method '" << method
                  << "' (expected independence or degree)\n";
        return kExitUsage;
    }
    const PolicyEvaluation eval =
        evaluate_policy(policy, utilities, loaded.configs, loaded.priors);
    write_output(evaluation_to_json(eval, policy), flags.out);
    return kExitOk;
}

int cmd_sweep(const CommonFlags& flags, const std::string& kind,
              const std::vector<double>& values, int replications, double fixed_cost,
              std::optional<double> heuristic_budget, const std::string& prefix) {
    SweepSpec spec;
    spec.kind = sweep_kind_from_name(kind);
    spec.values = values;
    spec.replications = replications;
    spec.base = load_scenario(flags.scenario_path);
    spec.samples = flags.samples > 0 ? flags.samples : spec.base.samples;
    spec.master_seed = flags.seed;
    spec.fixed_cost = fixed_cost;
    spec.heuristic_budget = heuristic_budget;
    const SweepResult result = run_sweep(spec);
    const std::string out_dir = flags.out.empty() ? "results" : flags.out;
    write_sweep_csv(result, out_dir, prefix);
    std::cerr << "wrote " << result.tables.size() << " table(s) to " << out_dir << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimal randomized defense policies for interdependent assets"};
    app.require_subcommand(1);

    CommonFlags flags;
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = hardware)")->capture_default_str();

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph to an edge-list file");
    std::string gen_model = "er";
    int gen_n = 100, gen_m = 1;
    double gen_p = 0.02, gen_mu = 1.0, gen_cascade = 0.5, gen_worth_value = 0.5;
    bool gen_directed = false;
    std::uint64_t gen_seed = 0;
    std::string gen_out, gen_worth_mode = "none", gen_worth_out;
    gen->add_option("--model", gen_model, "er | pa")->capture_default_str();
    gen->add_option("--n", gen_n, "target count")->capture_default_str();
    gen->add_option("--p", gen_p, "edge probability (er)")->capture_default_str();
    gen->add_option("--m", gen_m, "attachments per node (pa)")->capture_default_str();
    gen->add_option("--mu", gen_mu, "degree exponent (pa)")->capture_default_str();
    gen->add_option("--cascade-p", gen_cascade, "cascade probability on edges")
        ->capture_default_str();
    gen->add_flag("--directed", gen_directed, "directed edges (er only)");
    gen->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
    gen->add_option("--out", gen_out, "edge-list output path")->required();
    gen->add_option("--worth-mode", gen_worth_mode, "none | uniform01 | constant")
        ->capture_default_str();
    gen->add_option("--worth-value", gen_worth_value, "constant worth value")
        ->capture_default_str();
    gen->add_option("--worth-out", gen_worth_out, "worth file output path");

    auto add_common = [&](CLI::App* cmd, bool with_format) {
        cmd->add_option("--scenario", flags.scenario_path, "scenario JSON file")->required();
        cmd->add_option("--samples", flags.samples, "cascade samples K (default: scenario)");
        cmd->add_option("--seed", flags.seed, "sampling master seed")->capture_default_str();
        cmd->add_option("--out", flags.out, "output path (default: stdout)");
        if (with_format)
            cmd->add_option("--format", flags.format, "csv | json")->capture_default_str();
    };

    // losses
    auto* losses = app.add_subcommand("losses", "expected cascade losses per target");
    bool exact_tree = false;
    add_common(losses, true);
    losses->add_flag("--exact-tree", exact_tree, "exact linear-time tree computation");

    // solve
    auto* solve = app.add_subcommand("solve", "optimal randomized defense policy");
    bool disable_shortcircuit = false;
    add_common(solve, false);
    solve->add_flag("--no-r0-shortcircuit", disable_shortcircuit,
                    "run all n LPs even when r = 0");

    // baseline
    auto* baseline = app.add_subcommand("baseline", "comparison methods");
    std::string baseline_method = "independence";
    double baseline_budget = -1.0;
    add_common(baseline, false);
    baseline->add_option("--method", baseline_method, "independence | degree")
        ->capture_default_str();
    baseline->add_option("--budget", baseline_budget, "degree-heuristic budget");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "parameter sweeps with CSV output");
    std::string sweep_kind = "cost", sweep_prefix;
    std::vector<double> sweep_values;
    int replications = 100;
    double fixed_cost = 0.04;
    double heuristic_budget = -1.0;
    add_common(sweep, false);
    sweep->add_option("--kind", sweep_kind,
                      "cost | noise | density | mu | failure | configs | samples")
        ->capture_default_str();
    sweep->add_option("--values", sweep_values, "swept parameter values");
    sweep->add_option("--replications", replications, "seed count")->capture_default_str();
    sweep->add_option("--fixed-cost", fixed_cost, "deployment cost for the density sweep")
        ->capture_default_str();
    sweep->add_option("--heuristic-budget", heuristic_budget,
                      "degree-heuristic budget (default: optimum's spend)");
    sweep->add_option("--prefix", sweep_prefix, "output file prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    set_thread_count(threads);
    try {
        if (gen->parsed())
            return cmd_gen(gen_model, gen_n, gen_p, gen_m, gen_mu, gen_cascade, gen_directed,
                           gen_seed, gen_out, gen_worth_mode, gen_worth_value, gen_worth_out);
        if (losses->parsed()) return cmd_losses(flags, exact_tree);
        if (solve->parsed()) return cmd_solve(flags, disable_shortcircuit);
        if (baseline->parsed())
            return cmd_baseline(flags, baseline_method,
                                baseline_budget >= 0.0 ? std::optional<double>(baseline_budget)
                                                       : std::nullopt);
        if (sweep->parsed())
            return cmd_sweep(flags, sweep_kind, sweep_values, replications, fixed_cost,
                             heuristic_budget >= 0.0 ? std::optional<double>(heuristic_budget)
                                                     : std::nullopt,
                             sweep_prefix);
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NotATreeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
