#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace oracles {

using namespace interdep;

ExpectedLossVector tree_losses_bruteforce(const CascadeModel& model) {
    const int n = model.size();
    const auto& edges = model.live_candidates();
    std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(n));
    for (const auto& e : edges) {
        adj[static_cast<std::size_t>(e.source)].push_back({e.dest, e.cascade_prob});
        adj[static_cast<std::size_t>(e.dest)].push_back({e.source, e.cascade_prob});
    }
    const auto& w_def = model.graph().worths();
    const auto& w_atk = model.graph().attacker_worths();

    ExpectedLossVector out;
    out.defender.assign(static_cast<std::size_t>(n), 0.0);
    out.attacker.assign(static_cast<std::size_t>(n), 0.0);
    out.stderr_defender.assign(static_cast<std::size_t>(n), 0.0);
    for (int root = 0; root < n; ++root) {
        // DFS carrying the product of edge probabilities from the root
        std::vector<std::pair<int, double>> stack{{root, 1.0}};
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        seen[static_cast<std::size_t>(root)] = 1;
        double total_def = 0.0, total_atk = 0.0;
        while (!stack.empty()) {
            const auto [u, prod] = stack.back();
            stack.pop_back();
            total_def += prod * w_def[static_cast<std::size_t>(u)];
            total_atk += prod * w_atk[static_cast<std::size_t>(u)];
            for (const auto& [v, p] : adj[static_cast<std::size_t>(u)]) {
                if (seen[static_cast<std::size_t>(v)]) continue;
                seen[static_cast<std::size_t>(v)] = 1;
                stack.push_back({v, prod * p});
            }
        }
        out.defender[static_cast<std::size_t>(root)] = total_def;
        out.attacker[static_cast<std::size_t>(root)] = total_atk;
    }
    return out;
}

ExpectedLossVector enumerate_losses_exact(const CascadeModel& model) {
    if (model.directed()) throw std::invalid_argument("enumeration oracle is undirected only");
    const auto& edges = model.live_candidates();
    const int n = model.size();
    const int m = static_cast<int>(edges.size());
    if (m > 20) throw std::invalid_argument("too many edges to enumerate");
    const auto& w_def = model.graph().worths();
    const auto& w_atk = model.graph().attacker_worths();

    ExpectedLossVector out;
    out.defender.assign(static_cast<std::size_t>(n), 0.0);
    out.attacker.assign(static_cast<std::size_t>(n), 0.0);
    out.stderr_defender.assign(static_cast<std::size_t>(n), 0.0);

    std::vector<int> parent(static_cast<std::size_t>(n));
    const auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        double prob = 1.0;
        for (int e = 0; e < m; ++e)
            prob *= (mask >> e) & 1u ? edges[static_cast<std::size_t>(e)].cascade_prob
                                     : 1.0 - edges[static_cast<std::size_t>(e)].cascade_prob;
        if (prob == 0.0) continue;
        for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
        for (int e = 0; e < m; ++e) {
            if (!((mask >> e) & 1u)) continue;
            const int a = find(edges[static_cast<std::size_t>(e)].source);
            const int b = find(edges[static_cast<std::size_t>(e)].dest);
            if (a != b) parent[static_cast<std::size_t>(a)] = b;
        }
        std::vector<double> comp_def(static_cast<std::size_t>(n), 0.0);
        std::vector<double> comp_atk(static_cast<std::size_t>(n), 0.0);
        for (int t = 0; t < n; ++t) {
            comp_def[static_cast<std::size_t>(find(t))] += w_def[static_cast<std::size_t>(t)];
            comp_atk[static_cast<std::size_t>(find(t))] += w_atk[static_cast<std::size_t>(t)];
        }
        for (int t = 0; t < n; ++t) {
            out.defender[static_cast<std::size_t>(t)] +=
                prob * comp_def[static_cast<std::size_t>(find(t))];
            out.attacker[static_cast<std::size_t>(t)] +=
                prob * comp_atk[static_cast<std::size_t>(find(t))];
        }
    }
    return out;
}

namespace {

// Defender utility when the attacker best-responds to the grid policy,
// ties resolved in the defender's favor then by index.
double respond_and_score(const UtilityMatrices& u, const ConfigurationSet& configs,
                         const GamePriors& priors, const DefensePolicy& policy) {
    const int n = u.num_targets;
    double cost = 0.0, random_term = 0.0;
    std::vector<double> attack(static_cast<std::size_t>(n), 0.0);
    std::vector<double> defend(static_cast<std::size_t>(n), 0.0);
    for (int t = 0; t < n; ++t) {
        for (int o = 0; o < u.num_options; ++o) {
            const double q = policy.prob(o, t);
            attack[static_cast<std::size_t>(t)] += u.v(o, t) * q;
            defend[static_cast<std::size_t>(t)] += u.u(o, t) * q;
            cost += configs.cost(o, t) * q;
        }
        random_term += priors.g[static_cast<std::size_t>(t)] * defend[static_cast<std::size_t>(t)];
    }
    int best = 0;
    for (int t = 1; t < n; ++t) {
        if (attack[static_cast<std::size_t>(t)] > attack[static_cast<std::size_t>(best)] + 1e-12 ||
            (attack[static_cast<std::size_t>(t)] > attack[static_cast<std::size_t>(best)] - 1e-12 &&
             defend[static_cast<std::size_t>(t)] > defend[static_cast<std::size_t>(best)] + 1e-12))
            best = t;
    }
    return priors.r * defend[static_cast<std::size_t>(best)] + (1.0 - priors.r) * random_term -
           cost;
}

template <typename Fn>
void for_each_grid_policy(const UtilityMatrices& u, double resolution, Fn&& fn) {
    if (u.num_options != 2)
        throw std::invalid_argument("grid oracle expects two-option menus");
    const int n = u.num_targets;
    const int steps = static_cast<int>(std::lround(1.0 / resolution));
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    DefensePolicy policy = DefensePolicy::zeros(2, n);
    for (;;) {
        for (int t = 0; t < n; ++t) {
            const double q1 = std::min(1.0, idx[static_cast<std::size_t>(t)] * resolution);
            policy.prob(1, t) = q1;
            policy.prob(0, t) = 1.0 - q1;
        }
        fn(policy);
        int t = 0;
        while (t < n && ++idx[static_cast<std::size_t>(t)] > steps) {
            idx[static_cast<std::size_t>(t)] = 0;
            ++t;
        }
        if (t == n) break;
    }
}

}  // namespace

double grid_search_best_utility(const UtilityMatrices& utilities, const ConfigurationSet& configs,
                                const GamePriors& priors, double resolution) {
    double best = -std::numeric_limits<double>::infinity();
    for_each_grid_policy(utilities, resolution, [&](const DefensePolicy& policy) {
        best = std::max(best, respond_and_score(utilities, configs, priors, policy));
    });
    return best;
}

double grid_search_fixed_target(const UtilityMatrices& utilities, const ConfigurationSet& configs,
                                const GamePriors& priors, TargetId t_hat, double resolution) {
    const int n = utilities.num_targets;
    double best = -std::numeric_limits<double>::infinity();
    for_each_grid_policy(utilities, resolution, [&](const DefensePolicy& policy) {
        std::vector<double> attack(static_cast<std::size_t>(n), 0.0);
        double cost = 0.0, random_term = 0.0, attack_term = 0.0;
        for (int t = 0; t < n; ++t) {
            double vd = 0.0;
            for (int o = 0; o < utilities.num_options; ++o) {
                const double q = policy.prob(o, t);
                attack[static_cast<std::size_t>(t)] += utilities.v(o, t) * q;
                vd += utilities.u(o, t) * q;
                cost += configs.cost(o, t) * q;
            }
            random_term += priors.g[static_cast<std::size_t>(t)] * vd;
            if (t == t_hat) attack_term = vd;
        }
        for (int t = 0; t < n; ++t)
            if (attack[static_cast<std::size_t>(t)] >
                attack[static_cast<std::size_t>(t_hat)] + 1e-9)
                return;  // infeasible grid point
        best = std::max(best,
                        priors.r * attack_term + (1.0 - priors.r) * random_term - cost);
    });
    return best;
}

std::vector<int> reference_pa_degrees(int n, int m, double mu, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    degree[0] = degree[1] = 1;
    for (int i = 2; i < n; ++i) {
        const int existing = i;
        const int links = std::min(m, existing);
        std::vector<int> chosen;
        if (links == existing) {
            for (int j = 0; j < existing; ++j) chosen.push_back(j);
        } else {
            std::vector<char> used(static_cast<std::size_t>(existing), 0);
            while (static_cast<int>(chosen.size()) < links) {
                std::vector<double> weights(static_cast<std::size_t>(existing), 0.0);
                for (int j = 0; j < existing; ++j)
                    weights[static_cast<std::size_t>(j)] =
                        used[static_cast<std::size_t>(j)]
                            ? 0.0
                            : std::pow(degree[static_cast<std::size_t>(j)], mu);
                std::discrete_distribution<int> dist(weights.begin(), weights.end());
                const int pick = dist(rng);
                if (used[static_cast<std::size_t>(pick)]) continue;
                used[static_cast<std::size_t>(pick)] = 1;
                chosen.push_back(pick);
            }
        }
        for (int j : chosen) {
            ++degree[static_cast<std::size_t>(j)];
            ++degree[static_cast<std::size_t>(i)];
        }
    }
    return degree;
}

DependencyGraph random_tree(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> prob(0.0, 1.0);
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        edges.push_back({pick(rng), v, prob(rng)});
    }
    DependencyGraph graph(n, false, std::move(edges));
    std::vector<double> w(static_cast<std::size_t>(n));
    for (auto& x : w) x = prob(rng);
    graph.set_worths(std::move(w));
    return graph;
}

double mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double stderr_of_mean(const std::vector<double>& xs) {
    const double m = mean(xs);
    double sq = 0.0;
    for (double x : xs) sq += (x - m) * (x - m);
    const auto k = static_cast<double>(xs.size());
    return std::sqrt(sq / (k - 1.0) / k);
}

double welch_z(const std::vector<double>& a, const std::vector<double>& b) {
    const double se_a = stderr_of_mean(a);
    const double se_b = stderr_of_mean(b);
    return (mean(b) - mean(a)) / std::sqrt(se_a * se_a + se_b * se_b);
}

}  // namespace oracles
