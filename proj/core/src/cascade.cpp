#include "interdep/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <sstream>

#include "interdep/parallel.hpp"

namespace interdep {

namespace {

// Union-find with path halving; reused across samples.
struct DisjointSets {
    std::vector<int> parent;
    std::vector<int> size;

    void reset(int n) {
        parent.resize(static_cast<std::size_t>(n));
        size.assign(static_cast<std::size_t>(n), 1);
        for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[static_cast<std::size_t>(a)] < size[static_cast<std::size_t>(b)]) std::swap(a, b);
        parent[static_cast<std::size_t>(b)] = a;
        size[static_cast<std::size_t>(a)] += size[static_cast<std::size_t>(b)];
    }
};

struct Adjacency {
    std::vector<int> offsets;
    std::vector<std::pair<int, double>> neighbors;

    static Adjacency build_from_edges(const std::vector<Edge>& edges, int n, bool directed) {
        Adjacency adj;
        std::vector<int> counts(static_cast<std::size_t>(n), 0);
        for (const auto& e : edges) {
            ++counts[static_cast<std::size_t>(e.source)];
            if (!directed) ++counts[static_cast<std::size_t>(e.dest)];
        }
        adj.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
        for (int i = 0; i < n; ++i)
            adj.offsets[static_cast<std::size_t>(i) + 1] =
                adj.offsets[static_cast<std::size_t>(i)] + counts[static_cast<std::size_t>(i)];
        adj.neighbors.resize(static_cast<std::size_t>(adj.offsets.back()));
        std::vector<int> cursor(adj.offsets.begin(), adj.offsets.end() - 1);
        for (const auto& e : edges) {
            adj.neighbors[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.source)]++)] =
                {e.dest, e.cascade_prob};
            if (!directed)
                adj.neighbors[static_cast<std::size_t>(
                    cursor[static_cast<std::size_t>(e.dest)]++)] = {e.source, e.cascade_prob};
        }
        return adj;
    }

    static Adjacency build(const CascadeModel& model) {
        return build_from_edges(model.live_candidates(), model.size(), model.directed());
    }
};

}  // namespace

ConfigurationSet ConfigurationSet::uniform(int num_targets, std::vector<Option> menu) {
    if (num_targets < 1) throw std::invalid_argument("configuration set needs >= 1 target");
    if (menu.empty()) throw std::invalid_argument("every target needs >= 1 option");
    ConfigurationSet set;
    set.num_targets_ = num_targets;
    set.num_options_ = static_cast<int>(menu.size());
    set.cost_.resize(menu.size() * static_cast<std::size_t>(num_targets));
    set.beta_.resize(menu.size() * static_cast<std::size_t>(num_targets));
    for (std::size_t o = 0; o < menu.size(); ++o) {
        if (!(menu[o].cost >= 0.0)) throw std::invalid_argument("option cost must be nonnegative");
        if (!(menu[o].beta >= 0.0 && menu[o].beta <= 1.0))
            throw std::invalid_argument("penetration probability must lie in [0,1]");
        for (int t = 0; t < num_targets; ++t) {
            set.cost_[o * static_cast<std::size_t>(num_targets) + t] = menu[o].cost;
            set.beta_[o * static_cast<std::size_t>(num_targets) + t] = menu[o].beta;
        }
    }
    return set;
}

ConfigurationSet ConfigurationSet::per_target(std::vector<std::vector<Option>> menus) {
    if (menus.empty()) throw std::invalid_argument("configuration set needs >= 1 target");
    const std::size_t num_options = menus.front().size();
    if (num_options == 0) throw std::invalid_argument("every target needs >= 1 option");
    ConfigurationSet set;
    set.num_targets_ = static_cast<int>(menus.size());
    set.num_options_ = static_cast<int>(num_options);
    set.cost_.resize(num_options * menus.size());
    set.beta_.resize(num_options * menus.size());
    for (std::size_t t = 0; t < menus.size(); ++t) {
        if (menus[t].size() != num_options)
            throw std::invalid_argument("all targets must carry the same number of options");
        for (std::size_t o = 0; o < num_options; ++o) {
            const auto& opt = menus[t][o];
            if (!(opt.cost >= 0.0)) throw std::invalid_argument("option cost must be nonnegative");
            if (!(opt.beta >= 0.0 && opt.beta <= 1.0))
                throw std::invalid_argument("penetration probability must lie in [0,1]");
            set.cost_[o * menus.size() + t] = opt.cost;
            set.beta_[o * menus.size() + t] = opt.beta;
        }
    }
    return set;
}

double ConfigurationSet::min_total_cost() const {
    double total = 0.0;
    for (int t = 0; t < num_targets_; ++t) {
        double best = cost(0, t);
        for (int o = 1; o < num_options_; ++o) best = std::min(best, cost(o, t));
        total += best;
    }
    return total;
}

std::string ExpectedLossVector::to_csv() const {
    std::ostringstream out;
    out << "target,loss_def,loss_atk,stderr\n";
    char buf[160];
    for (int t = 0; t < size(); ++t) {
        std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.12g\n", t,
                      defender[static_cast<std::size_t>(t)],
                      attacker[static_cast<std::size_t>(t)],
                      stderr_defender[static_cast<std::size_t>(t)]);
        out << buf;
    }
    return out.str();
}

ComponentPartition sample_live_edge_graph(const CascadeModel& model, Rng& rng) {
    if (model.directed())
        throw std::invalid_argument(
            "live-edge component sampling requires an undirected model; "
            "directed cascades go through simulate_cascade_bfs");
    const int n = model.size();
    DisjointSets sets;
    sets.reset(n);
    for (const auto& e : model.live_candidates())
        if (rng.bernoulli(e.cascade_prob)) sets.unite(e.source, e.dest);
    ComponentPartition part;
    part.label.assign(static_cast<std::size_t>(n), -1);
    for (int t = 0; t < n; ++t) {
        const int root = sets.find(t);
        if (part.label[static_cast<std::size_t>(root)] < 0)
            part.label[static_cast<std::size_t>(root)] = part.count++;
        part.label[static_cast<std::size_t>(t)] = part.label[static_cast<std::size_t>(root)];
    }
    return part;
}

std::vector<TargetId> simulate_cascade_bfs(const CascadeModel& model, TargetId start, Rng& rng) {
    const int n = model.size();
    if (start < 0 || start >= n) throw std::invalid_argument("start target out of range");
    const Adjacency adj = Adjacency::build(model);
    std::vector<char> affected(static_cast<std::size_t>(n), 0);
    std::vector<TargetId> order;
    std::queue<TargetId> frontier;
    affected[static_cast<std::size_t>(start)] = 1;
    order.push_back(start);
    frontier.push(start);
    while (!frontier.empty()) {
        const TargetId u = frontier.front();
        frontier.pop();
        for (int i = adj.offsets[static_cast<std::size_t>(u)];
             i < adj.offsets[static_cast<std::size_t>(u) + 1]; ++i) {
            const auto [v, p] = adj.neighbors[static_cast<std::size_t>(i)];
            if (affected[static_cast<std::size_t>(v)]) continue;  // edge already resolved or moot
            if (rng.bernoulli(p)) {
                affected[static_cast<std::size_t>(v)] = 1;
                order.push_back(v);
                frontier.push(v);
            }
        }
    }
    return order;
}

namespace {

constexpr int kSamplesPerBlock = 256;

ExpectedLossVector estimate_undirected(const CascadeModel& model, int sample_count,
                                       std::uint64_t master_seed) {
    const int n = model.size();
    const auto& w_def = model.graph().worths();
    const auto& w_atk = model.graph().attacker_worths();
    const auto& candidates = model.live_candidates();

    const int num_blocks = (sample_count + kSamplesPerBlock - 1) / kSamplesPerBlock;
    // Per-block partials, reduced in block order afterwards so the
    // result is independent of which thread ran which block.
    std::vector<std::vector<double>> block_def(static_cast<std::size_t>(num_blocks));
    std::vector<std::vector<double>> block_atk(static_cast<std::size_t>(num_blocks));
    std::vector<std::vector<double>> block_sq(static_cast<std::size_t>(num_blocks));

    parallel_for_blocks(static_cast<std::size_t>(num_blocks), [&](std::size_t b) {
        auto& sum_def = block_def[b];
        auto& sum_atk = block_atk[b];
        auto& sum_sq = block_sq[b];
        sum_def.assign(static_cast<std::size_t>(n), 0.0);
        sum_atk.assign(static_cast<std::size_t>(n), 0.0);
        sum_sq.assign(static_cast<std::size_t>(n), 0.0);
        DisjointSets sets;
        std::vector<double> comp_def(static_cast<std::size_t>(n));
        std::vector<double> comp_atk(static_cast<std::size_t>(n));
        const int begin = static_cast<int>(b) * kSamplesPerBlock;
        const int end = std::min(sample_count, begin + kSamplesPerBlock);
        for (int k = begin; k < end; ++k) {
            Rng rng(substream_seed(master_seed, static_cast<std::uint64_t>(k)));
            sets.reset(n);
            for (const auto& e : candidates)
                if (rng.bernoulli(e.cascade_prob)) sets.unite(e.source, e.dest);
            std::fill(comp_def.begin(), comp_def.end(), 0.0);
            std::fill(comp_atk.begin(), comp_atk.end(), 0.0);
            for (int t = 0; t < n; ++t) {
                const int root = sets.find(t);
                comp_def[static_cast<std::size_t>(root)] += w_def[static_cast<std::size_t>(t)];
                comp_atk[static_cast<std::size_t>(root)] += w_atk[static_cast<std::size_t>(t)];
            }
            for (int t = 0; t < n; ++t) {
                const int root = sets.find(t);
                const double ld = comp_def[static_cast<std::size_t>(root)];
                sum_def[static_cast<std::size_t>(t)] += ld;
                sum_atk[static_cast<std::size_t>(t)] += comp_atk[static_cast<std::size_t>(root)];
                sum_sq[static_cast<std::size_t>(t)] += ld * ld;
            }
        }
    });

    ExpectedLossVector out;
    out.sample_count = sample_count;
    out.defender.assign(static_cast<std::size_t>(n), 0.0);
    out.attacker.assign(static_cast<std::size_t>(n), 0.0);
    out.stderr_defender.assign(static_cast<std::size_t>(n), 0.0);
    std::vector<double> sq(static_cast<std::size_t>(n), 0.0);
    for (int b = 0; b < num_blocks; ++b)
        for (int t = 0; t < n; ++t) {
            out.defender[static_cast<std::size_t>(t)] +=
                block_def[static_cast<std::size_t>(b)][static_cast<std::size_t>(t)];
            out.attacker[static_cast<std::size_t>(t)] +=
                block_atk[static_cast<std::size_t>(b)][static_cast<std::size_t>(t)];
            sq[static_cast<std::size_t>(t)] +=
                block_sq[static_cast<std::size_t>(b)][static_cast<std::size_t>(t)];
        }
    const double k = sample_count;
    for (int t = 0; t < n; ++t) {
        const double mean = out.defender[static_cast<std::size_t>(t)] / k;
        const double meansq = sq[static_cast<std::size_t>(t)] / k;
        out.defender[static_cast<std::size_t>(t)] = mean;
        out.attacker[static_cast<std::size_t>(t)] /= k;
        if (sample_count > 1) {
            const double var = std::max(0.0, (meansq - mean * mean) * k / (k - 1.0));
            out.stderr_defender[static_cast<std::size_t>(t)] = std::sqrt(var / k);
        }
    }
    return out;
}

ExpectedLossVector estimate_directed(const CascadeModel& model, int sample_count,
                                     std::uint64_t master_seed) {
    const int n = model.size();
    const auto& w_def = model.graph().worths();
    const auto& w_atk = model.graph().attacker_worths();
    const Adjacency adj = Adjacency::build(model);

    ExpectedLossVector out;
    out.sample_count = sample_count;
    out.defender.assign(static_cast<std::size_t>(n), 0.0);
    out.attacker.assign(static_cast<std::size_t>(n), 0.0);
    out.stderr_defender.assign(static_cast<std::size_t>(n), 0.0);

    parallel_for_blocks(static_cast<std::size_t>(n), [&](std::size_t start) {
        std::vector<char> affected(static_cast<std::size_t>(n), 0);
        std::vector<int> touched;
        std::queue<int> frontier;
        double sum = 0.0, sum_sq = 0.0, sum_atk = 0.0;
        for (int k = 0; k < sample_count; ++k) {
            Rng rng(substream_seed(master_seed, start, static_cast<std::uint64_t>(k)));
            touched.clear();
            affected[start] = 1;
            touched.push_back(static_cast<int>(start));
            frontier.push(static_cast<int>(start));
            double ld = w_def[start], la = w_atk[start];
            while (!frontier.empty()) {
                const int u = frontier.front();
                frontier.pop();
                for (int i = adj.offsets[static_cast<std::size_t>(u)];
                     i < adj.offsets[static_cast<std::size_t>(u) + 1]; ++i) {
                    const auto [v, p] = adj.neighbors[static_cast<std::size_t>(i)];
                    if (affected[static_cast<std::size_t>(v)]) continue;
                    if (rng.bernoulli(p)) {
                        affected[static_cast<std::size_t>(v)] = 1;
                        touched.push_back(v);
                        frontier.push(v);
                        ld += w_def[static_cast<std::size_t>(v)];
                        la += w_atk[static_cast<std::size_t>(v)];
                    }
                }
            }
            for (int t : touched) affected[static_cast<std::size_t>(t)] = 0;
            sum += ld;
            sum_sq += ld * ld;
            sum_atk += la;
        }
        const double k = sample_count;
        const double mean = sum / k;
        out.defender[start] = mean;
        out.attacker[start] = sum_atk / k;
        if (sample_count > 1) {
            const double var = std::max(0.0, (sum_sq / k - mean * mean) * k / (k - 1.0));
            out.stderr_defender[start] = std::sqrt(var / k);
        }
    });
    return out;
}

}  // namespace

ExpectedLossVector estimate_component_losses(const CascadeModel& model, int sample_count,
                                             std::uint64_t master_seed) {
    if (sample_count < 1) throw std::invalid_argument("sample count must be >= 1");
    return model.directed() ? estimate_directed(model, sample_count, master_seed)
                            : estimate_undirected(model, sample_count, master_seed);
}

ExpectedLossVector tree_expected_losses(const CascadeModel& model) {
    const int n = model.size();
    if (model.directed()) throw NotATreeError("tree losses require an undirected model");
    if (model.is_dense())
        throw NotATreeError("tree losses operate on sparse models; dense noise models are "
                            "never trees");
    // structure check is on the graph itself, zero-probability edges included
    const auto& edges = model.graph().edges();
    if (static_cast<int>(edges.size()) != n - 1)
        throw NotATreeError("graph has " + std::to_string(edges.size()) + " edges, a tree on " +
                            std::to_string(n) + " targets needs " + std::to_string(n - 1));
    const Adjacency adj = Adjacency::build_from_edges(edges, n, false);

    // BFS order from target 0; a tree is connected, so everything is reached.
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::vector<double> parent_prob(static_cast<std::size_t>(n), 0.0);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    order.push_back(0);
    seen[0] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
        const int u = order[head];
        for (int i = adj.offsets[static_cast<std::size_t>(u)];
             i < adj.offsets[static_cast<std::size_t>(u) + 1]; ++i) {
            const auto [v, p] = adj.neighbors[static_cast<std::size_t>(i)];
            if (seen[static_cast<std::size_t>(v)]) continue;
            seen[static_cast<std::size_t>(v)] = 1;
            parent[static_cast<std::size_t>(v)] = u;
            parent_prob[static_cast<std::size_t>(v)] = p;
            order.push_back(v);
        }
    }
    if (static_cast<int>(order.size()) != n)
        throw NotATreeError("graph is disconnected");

    const auto& w_def = model.graph().worths();
    const auto& w_atk = model.graph().attacker_worths();

    // down[v] = expected worth reached in v's subtree when v is affected;
    // up[v] adds the contribution through v's parent edge.
    std::vector<double> down_def(w_def), down_atk(w_atk);
    for (std::size_t i = order.size(); i-- > 1;) {
        const int v = order[i];
        const int par = parent[static_cast<std::size_t>(v)];
        const double p = parent_prob[static_cast<std::size_t>(v)];
        down_def[static_cast<std::size_t>(par)] += p * down_def[static_cast<std::size_t>(v)];
        down_atk[static_cast<std::size_t>(par)] += p * down_atk[static_cast<std::size_t>(v)];
    }
    std::vector<double> up_def(static_cast<std::size_t>(n), 0.0);
    std::vector<double> up_atk(static_cast<std::size_t>(n), 0.0);
    for (const int v : order) {
        // down[v] already aggregates all child terms: subtracting one
        // child's share gives the sibling sum without a second pass.
        for (int i = adj.offsets[static_cast<std::size_t>(v)];
             i < adj.offsets[static_cast<std::size_t>(v) + 1]; ++i) {
            const auto [c, p] = adj.neighbors[static_cast<std::size_t>(i)];
            if (c == parent[static_cast<std::size_t>(v)]) continue;
            up_def[static_cast<std::size_t>(c)] =
                p * (up_def[static_cast<std::size_t>(v)] + down_def[static_cast<std::size_t>(v)] -
                     p * down_def[static_cast<std::size_t>(c)]);
            up_atk[static_cast<std::size_t>(c)] =
                p * (up_atk[static_cast<std::size_t>(v)] + down_atk[static_cast<std::size_t>(v)] -
                     p * down_atk[static_cast<std::size_t>(c)]);
        }
    }

    ExpectedLossVector out;
    out.sample_count = 0;  // exact
    out.defender.resize(static_cast<std::size_t>(n));
    out.attacker.resize(static_cast<std::size_t>(n));
    out.stderr_defender.assign(static_cast<std::size_t>(n), 0.0);
    for (int t = 0; t < n; ++t) {
        out.defender[static_cast<std::size_t>(t)] =
            down_def[static_cast<std::size_t>(t)] + up_def[static_cast<std::size_t>(t)];
        out.attacker[static_cast<std::size_t>(t)] =
            down_atk[static_cast<std::size_t>(t)] + up_atk[static_cast<std::size_t>(t)];
    }
    return out;
}

UtilityMatrices build_utility_matrices(const ExpectedLossVector& losses,
                                       const ConfigurationSet& configs, bool zero_sum) {
    const int n = losses.size();
    if (configs.num_targets() != n)
        throw std::invalid_argument("loss vector and configuration set disagree on target count");
    UtilityMatrices m;
    m.num_options = configs.num_options();
    m.num_targets = n;
    m.U.resize(static_cast<std::size_t>(m.num_options) * n);
    m.V.resize(static_cast<std::size_t>(m.num_options) * n);
    for (int o = 0; o < m.num_options; ++o)
        for (int t = 0; t < n; ++t) {
            const double beta = configs.beta(o, t);
            const double u = -beta * losses.defender[static_cast<std::size_t>(t)];
            m.U[static_cast<std::size_t>(o) * n + t] = u;
            m.V[static_cast<std::size_t>(o) * n + t] =
                zero_sum ? -u : beta * losses.attacker[static_cast<std::size_t>(t)];
        }
    return m;
}

}  // namespace interdep
