#include "interdep/scenario.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace interdep {

using nlohmann::json;

DependencyGraph GraphSpec::realize(std::uint64_t seed_override) const {
    switch (model) {
        case Model::ErdosRenyi:
            return generate_erdos_renyi(n, edge_prob, seed_override, directed, cascade_prob);
        case Model::PrefAttach:
            return generate_preferential_attachment(n, attach_count, mu, seed_override,
                                                    cascade_prob);
        case Model::Fixed:
            return fixed;
    }
    throw std::logic_error("unreachable");
}

ConfigurationSet Scenario::configurations(int n) const {
    if (!per_target_menus.empty()) {
        if (static_cast<int>(per_target_menus.size()) != n)
            throw std::invalid_argument("per-target configuration count does not match n");
        return ConfigurationSet::per_target(per_target_menus);
    }
    if (menu.empty()) throw std::invalid_argument("scenario lacks configurations");
    return ConfigurationSet::uniform(n, menu);
}

GamePriors Scenario::priors(int n) const {
    GamePriors priors = GamePriors::uniform(n, prior_r);
    if (!prior_g.empty()) {
        if (static_cast<int>(prior_g.size()) != n)
            throw std::invalid_argument("failure distribution length does not match n");
        priors.g = prior_g;
    }
    return priors;
}

CascadeModel scenario_model(const DependencyGraph& graph, const Scenario& scenario) {
    if (scenario.noise)
        return apply_edge_noise(graph, scenario.noise->epsilon, scenario.noise->base_p);
    return CascadeModel::sparse(graph);
}

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
    throw ParseError(origin + ": " + msg);
}

ConfigurationSet::Option parse_option(const json& j, const std::string& origin) {
    if (!j.is_object() || !j.contains("cost") || !j.contains("beta"))
        fail(origin, "configuration option needs 'cost' and 'beta'");
    ConfigurationSet::Option opt;
    opt.cost = j.at("cost").get<double>();
    opt.beta = j.at("beta").get<double>();
    return opt;
}

GraphSpec parse_graph_spec(const json& j, const std::string& base_dir,
                           const std::string& origin) {
    GraphSpec spec;
    if (j.is_string()) {
        std::filesystem::path p(j.get<std::string>());
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        spec.model = GraphSpec::Model::Fixed;
        spec.fixed = load_edge_list(p.string());
        spec.n = spec.fixed.size();
        spec.directed = spec.fixed.directed();
        return spec;
    }
    if (!j.is_object()) fail(origin, "'graph' must be a path or an object");
    if (j.contains("model")) {
        const std::string model = j.at("model").get<std::string>();
        spec.n = j.at("n").get<int>();
        spec.seed = j.value("seed", 0ull);
        spec.cascade_prob = j.value("cascade_prob", 0.5);
        if (model == "er") {
            spec.model = GraphSpec::Model::ErdosRenyi;
            spec.edge_prob = j.at("p").get<double>();
            spec.directed = j.value("directed", false);
        } else if (model == "pa") {
            spec.model = GraphSpec::Model::PrefAttach;
            spec.attach_count = j.at("m").get<int>();
            spec.mu = j.value("mu", 1.0);
        } else {
            fail(origin, "unknown graph model '" + model + "' (expected 'er' or 'pa')");
        }
        return spec;
    }
    if (j.contains("edges")) {
        const int n = j.at("n").get<int>();
        const bool directed = j.value("directed", false);
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 3) fail(origin, "edge entries are [src, dst, prob]");
            edges.push_back({e[0].get<TargetId>(), e[1].get<TargetId>(), e[2].get<double>()});
        }
        spec.model = GraphSpec::Model::Fixed;
        spec.fixed = DependencyGraph(n, directed, std::move(edges));
        spec.n = n;
        spec.directed = directed;
        return spec;
    }
    fail(origin, "'graph' object needs either 'model' or 'edges'");
}

WorthAssignment parse_worths(const json& j, const std::string& origin) {
    WorthAssignment w;
    if (!j.is_object() || !j.contains("mode")) fail(origin, "'worths' needs a 'mode'");
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "uniform01") {
        w.mode = WorthAssignment::Mode::Uniform01;
        w.seed = j.value("seed", 0ull);
    } else if (mode == "constant") {
        w.mode = WorthAssignment::Mode::Constant;
        w.value = j.at("value").get<double>();
    } else if (mode == "explicit") {
        w.mode = WorthAssignment::Mode::Explicit;
        w.values = j.at("values").get<std::vector<double>>();
        if (j.contains("attacker_values"))
            w.attacker_values = j.at("attacker_values").get<std::vector<double>>();
    } else {
        fail(origin, "unknown worth mode '" + mode + "'");
    }
    return w;
}

}  // namespace

Scenario parse_scenario_json(const std::string& text, const std::string& base_dir,
                             const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(origin, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail(origin, "scenario must be a JSON object");

    Scenario s;
    if (!doc.contains("graph")) fail(origin, "scenario needs a 'graph'");
    s.graph = parse_graph_spec(doc.at("graph"), base_dir, origin);

    if (doc.contains("worths")) {
        const auto& jw = doc.at("worths");
        if (jw.is_string()) {
            // worth file applied to a fixed graph
            if (s.graph.model != GraphSpec::Model::Fixed)
                fail(origin, "a worth file requires a fixed graph");
            std::filesystem::path p(jw.get<std::string>());
            if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
            load_worths_file(s.graph.fixed, p.string());
            s.worths.mode = WorthAssignment::Mode::Explicit;
            s.worths.values = s.graph.fixed.worths();
            s.worths.attacker_values = s.graph.fixed.attacker_worths();
        } else {
            s.worths = parse_worths(jw, origin);
        }
    }

    if (doc.contains("configurations")) {
        const auto& jc = doc.at("configurations");
        if (jc.is_array()) {
            for (const auto& o : jc) s.menu.push_back(parse_option(o, origin));
        } else if (jc.is_object() && jc.contains("per_target")) {
            for (const auto& menu : jc.at("per_target")) {
                std::vector<ConfigurationSet::Option> options;
                for (const auto& o : menu) options.push_back(parse_option(o, origin));
                s.per_target_menus.push_back(std::move(options));
            }
        } else {
            fail(origin, "'configurations' must be an option list or {per_target: [...]}");
        }
    }

    if (doc.contains("priors")) {
        const auto& jp = doc.at("priors");
        s.prior_r = jp.value("r", 1.0);
        if (jp.contains("g") && !jp.at("g").is_string())
            s.prior_g = jp.at("g").get<std::vector<double>>();
    }

    if (doc.contains("budget") && !doc.at("budget").is_null()) {
        const auto& jb = doc.at("budget");
        if (jb.is_number()) {
            s.budget = jb.get<double>();
        } else if (jb.is_object()) {
            s.budget = jb.at("value").get<double>();
            const std::string mode = jb.value("mode", "total");
            if (mode == "total")
                s.budget_mode = BudgetMode::Total;
            else if (mode == "per_target")
                s.budget_mode = BudgetMode::PerTarget;
            else
                fail(origin, "budget mode must be 'total' or 'per_target'");
        } else {
            fail(origin, "'budget' must be a number or {mode, value}");
        }
    }

    s.zero_sum = doc.value("zero_sum", true);

    if (doc.contains("noise") && !doc.at("noise").is_null()) {
        const auto& jn = doc.at("noise");
        NoiseSpec noise;
        noise.epsilon = jn.at("epsilon").get<double>();
        noise.base_p = jn.value("base_p", 0.5);
        s.noise = noise;
    }

    s.samples = doc.value("samples", 10000);
    if (s.samples < 0) fail(origin, "'samples' must be nonnegative");
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_json(buf.str(), std::filesystem::path(path).parent_path().string(),
                               path);
}

std::string solve_result_to_json(const SolveResult& result, double sample_ms) {
    json doc;
    doc["objective"] = result.objective;
    doc["attacked_target"] = result.attacked_target;
    doc["shortcircuit_r0"] = result.shortcircuit_r0;
    doc["solve_ms"] = result.solve_ms;
    if (sample_ms > 0.0) doc["sample_ms"] = sample_ms;
    json policy = json::array();
    for (int o = 0; o < result.policy.num_options; ++o) {
        json row = json::array();
        for (int t = 0; t < result.policy.num_targets; ++t)
            row.push_back(result.policy.prob(o, t));
        policy.push_back(std::move(row));
    }
    doc["policy"] = std::move(policy);
    json statuses = json::array();
    for (std::size_t t = 0; t < result.per_lp.size(); ++t) {
        json entry;
        entry["target"] = t;
        entry["status"] = result.per_lp[t].feasible ? "optimal" : "infeasible";
        if (result.per_lp[t].feasible) entry["objective"] = result.per_lp[t].objective;
        statuses.push_back(std::move(entry));
    }
    doc["per_lp_status"] = std::move(statuses);
    return doc.dump(2) + "\n";
}

std::string losses_to_json(const ExpectedLossVector& losses) {
    json doc;
    doc["sample_count"] = losses.sample_count;
    doc["loss_def"] = losses.defender;
    doc["loss_atk"] = losses.attacker;
    doc["stderr"] = losses.stderr_defender;
    return doc.dump(2) + "\n";
}

std::string evaluation_to_json(const PolicyEvaluation& eval, const DefensePolicy& policy) {
    json doc;
    doc["defender_utility"] = eval.defender_utility;
    doc["attacker_target"] = eval.attacker_target;
    doc["expected_cost"] = eval.expected_cost;
    doc["expected_loss"] = eval.expected_loss;
    json rows = json::array();
    for (int o = 0; o < policy.num_options; ++o) {
        json row = json::array();
        for (int t = 0; t < policy.num_targets; ++t) row.push_back(policy.prob(o, t));
        rows.push_back(std::move(row));
    }
    doc["policy"] = std::move(rows);
    return doc.dump(2) + "\n";
}

}  // namespace interdep
