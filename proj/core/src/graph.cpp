#include "interdep/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "interdep/rng.hpp"

namespace interdep {

namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
}

}  // namespace

DependencyGraph::DependencyGraph(int n, bool directed, std::vector<Edge> edges)
    : n_(n), directed_(directed), edges_(std::move(edges)) {
    if (n < 0) throw std::invalid_argument("target count must be nonnegative");
    for (auto& e : edges_) {
        if (e.source < 0 || e.source >= n || e.dest < 0 || e.dest >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (e.source == e.dest) throw std::invalid_argument("self-loops are not allowed");
        if (!(e.cascade_prob >= 0.0 && e.cascade_prob <= 1.0))
            throw std::invalid_argument("cascade probability must lie in [0,1]");
        if (!directed_ && e.source > e.dest) std::swap(e.source, e.dest);
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return a.source != b.source ? a.source < b.source : a.dest < b.dest;
    });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i].source == edges_[i - 1].source && edges_[i].dest == edges_[i - 1].dest)
            throw std::invalid_argument("duplicate edge (" + std::to_string(edges_[i].source) +
                                        "," + std::to_string(edges_[i].dest) + ")");
    }
    worths_.assign(static_cast<std::size_t>(n_), 0.0);
    attacker_worths_ = worths_;
}

void DependencyGraph::set_worths(std::vector<double> defender, std::vector<double> attacker) {
    if (static_cast<int>(defender.size()) != n_)
        throw std::invalid_argument("worth list length does not match target count");
    for (double w : defender)
        if (!(w >= 0.0)) throw std::invalid_argument("worths must be nonnegative");
    if (attacker.empty()) {
        attacker = defender;
    } else {
        if (static_cast<int>(attacker.size()) != n_)
            throw std::invalid_argument("attacker worth list length does not match target count");
        for (double w : attacker)
            if (!(w >= 0.0)) throw std::invalid_argument("worths must be nonnegative");
    }
    worths_ = std::move(defender);
    attacker_worths_ = std::move(attacker);
}

std::vector<int> DependencyGraph::degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(n_), 0);
    for (const auto& e : edges_) {
        ++deg[static_cast<std::size_t>(e.source)];
        ++deg[static_cast<std::size_t>(e.dest)];
    }
    return deg;
}

double DependencyGraph::total_worth() const {
    double s = 0.0;
    for (double w : worths_) s += w;
    return s;
}

double DependencyGraph::total_attacker_worth() const {
    double s = 0.0;
    for (double w : attacker_worths_) s += w;
    return s;
}

CascadeModel CascadeModel::sparse(DependencyGraph graph) {
    CascadeModel m;
    m.graph_ = std::move(graph);
    m.dense_ = false;
    // zero-probability edges can never fire; dropping them keeps the
    // draw sequence aligned with the dense representation
    for (const auto& e : m.graph_.edges())
        if (e.cascade_prob > 0.0) m.candidates_.push_back(e);
    return m;
}

CascadeModel CascadeModel::dense(DependencyGraph graph, std::vector<double> probs) {
    const std::size_t n = static_cast<std::size_t>(graph.size());
    if (probs.size() != n * n)
        throw std::invalid_argument("dense probability matrix has wrong size");
    CascadeModel m;
    m.graph_ = std::move(graph);
    m.dense_ = true;
    m.dense_probs_ = std::move(probs);
    const int nn = m.graph_.size();
    if (m.graph_.directed()) {
        for (int i = 0; i < nn; ++i)
            for (int j = 0; j < nn; ++j) {
                if (i == j) continue;
                const double p = m.dense_probs_[static_cast<std::size_t>(i) * nn + j];
                check_probability(p, "dense cascade probability");
                if (p > 0.0) m.candidates_.push_back({i, j, p});
            }
    } else {
        for (int i = 0; i < nn; ++i)
            for (int j = i + 1; j < nn; ++j) {
                const double p = m.dense_probs_[static_cast<std::size_t>(i) * nn + j];
                check_probability(p, "dense cascade probability");
                if (p > 0.0) m.candidates_.push_back({i, j, p});
            }
    }
    return m;
}

double CascadeModel::prob(TargetId from, TargetId to) const {
    if (from == to) return 0.0;
    if (dense_) {
        return dense_probs_[static_cast<std::size_t>(from) * graph_.size() + to];
    }
    TargetId a = from, b = to;
    if (!graph_.directed() && a > b) std::swap(a, b);
    auto it = std::lower_bound(candidates_.begin(), candidates_.end(), std::make_pair(a, b),
                               [](const Edge& e, const std::pair<TargetId, TargetId>& key) {
                                   return e.source != key.first ? e.source < key.first
                                                                : e.dest < key.second;
                               });
    if (it != candidates_.end() && it->source == a && it->dest == b) return it->cascade_prob;
    return 0.0;
}

DependencyGraph generate_erdos_renyi(int n, double p, std::uint64_t seed, bool directed,
                                     double cascade_prob) {
    if (n < 1) throw std::invalid_argument("erdos-renyi requires n >= 1");
    check_probability(p, "edge probability");
    check_probability(cascade_prob, "cascade probability");
    Rng rng(substream_seed(seed, 0x4552));  // "ER"
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (directed) {
                if (rng.bernoulli(p)) edges.push_back({i, j, cascade_prob});
                if (rng.bernoulli(p)) edges.push_back({j, i, cascade_prob});
            } else if (rng.bernoulli(p)) {
                edges.push_back({i, j, cascade_prob});
            }
        }
    }
    return DependencyGraph(n, directed, std::move(edges));
}

DependencyGraph generate_preferential_attachment(int n, int m, double mu, std::uint64_t seed,
                                                 double cascade_prob) {
    if (n < 2) throw std::invalid_argument("preferential attachment requires n >= 2");
    if (m < 1) throw std::invalid_argument("preferential attachment requires m >= 1");
    if (!(mu >= 0.0)) throw std::invalid_argument("mu must be nonnegative");
    check_probability(cascade_prob, "cascade probability");

    Rng rng(substream_seed(seed, 0x5041));  // "PA"
    std::vector<Edge> edges;
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    // Fixed 2-node, 1-edge seed graph.
    edges.push_back({0, 1, cascade_prob});
    degree[0] = degree[1] = 1;

    std::vector<double> weight;
    std::vector<char> taken;
    for (int i = 2; i < n; ++i) {
        const int existing = i;
        const int links = std::min(m, existing);
        if (links == existing) {
            for (int j = 0; j < existing; ++j) edges.push_back({j, i, cascade_prob});
            for (int j = 0; j < existing; ++j) ++degree[static_cast<std::size_t>(j)];
            degree[static_cast<std::size_t>(i)] = links;
            continue;
        }
        weight.assign(static_cast<std::size_t>(existing), 0.0);
        taken.assign(static_cast<std::size_t>(existing), 0);
        std::vector<int> chosen;
        chosen.reserve(static_cast<std::size_t>(links));
        for (int k = 0; k < links; ++k) {
            // Degrees change between attachments of later nodes only, but
            // weights are recomputed per draw to honor exclusions.
            double total = 0.0;
            for (int j = 0; j < existing; ++j) {
                weight[static_cast<std::size_t>(j)] =
                    taken[static_cast<std::size_t>(j)]
                        ? 0.0
                        : std::pow(static_cast<double>(degree[static_cast<std::size_t>(j)]), mu);
                total += weight[static_cast<std::size_t>(j)];
            }
            double u = rng.next_double() * total;
            int pick = -1;
            for (int j = 0; j < existing; ++j) {
                u -= weight[static_cast<std::size_t>(j)];
                if (u < 0.0 && !taken[static_cast<std::size_t>(j)]) {
                    pick = j;
                    break;
                }
            }
            if (pick < 0) {  // numerical tail: take the last available node
                for (int j = existing - 1; j >= 0; --j)
                    if (!taken[static_cast<std::size_t>(j)]) {
                        pick = j;
                        break;
                    }
            }
            taken[static_cast<std::size_t>(pick)] = 1;
            chosen.push_back(pick);
        }
        for (int j : chosen) {
            edges.push_back({j, i, cascade_prob});
            ++degree[static_cast<std::size_t>(j)];
        }
        degree[static_cast<std::size_t>(i)] = links;
    }
    return DependencyGraph(n, false, std::move(edges));
}

DependencyGraph assign_worths(DependencyGraph graph, const WorthAssignment& assignment) {
    const int n = graph.size();
    switch (assignment.mode) {
        case WorthAssignment::Mode::Uniform01: {
            Rng rng(substream_seed(assignment.seed, 0x5754));  // "WT"
            std::vector<double> w(static_cast<std::size_t>(n));
            for (auto& x : w) x = rng.next_double();
            graph.set_worths(std::move(w));
            break;
        }
        case WorthAssignment::Mode::Constant: {
            if (!(assignment.value >= 0.0))
                throw std::invalid_argument("constant worth must be nonnegative");
            graph.set_worths(std::vector<double>(static_cast<std::size_t>(n), assignment.value));
            break;
        }
        case WorthAssignment::Mode::Explicit:
            graph.set_worths(assignment.values, assignment.attacker_values);
            break;
    }
    return graph;
}

CascadeModel apply_edge_noise(const DependencyGraph& graph, double epsilon, double base_p) {
    check_probability(epsilon, "epsilon");
    check_probability(base_p, "base_p");
    const int n = graph.size();
    constexpr int kDenseCap = 4096;  // n^2 doubles are materialized
    if (n > kDenseCap)
        throw std::invalid_argument("edge noise materializes an n x n matrix; n capped at " +
                                    std::to_string(kDenseCap));
    std::vector<double> probs(static_cast<std::size_t>(n) * n, base_p * epsilon);
    for (int i = 0; i < n; ++i) probs[static_cast<std::size_t>(i) * n + i] = 0.0;
    for (const auto& e : graph.edges()) {
        const double adjusted = e.cascade_prob * (1.0 - epsilon);
        probs[static_cast<std::size_t>(e.source) * n + e.dest] = adjusted;
        if (!graph.directed()) probs[static_cast<std::size_t>(e.dest) * n + e.source] = adjusted;
    }
    if (!graph.directed()) {
        // keep the matrix symmetric for unobserved pairs as well
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                probs[static_cast<std::size_t>(j) * n + i] =
                    probs[static_cast<std::size_t>(i) * n + j];
    }
    return CascadeModel::dense(graph, std::move(probs));
}

namespace {

std::string format_prob(double p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    return buf;
}

}  // namespace

DependencyGraph parse_edge_list(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = -1;
    bool directed = false;
    std::vector<Edge> edges;
    auto fail = [&](const std::string& msg) {
        throw ParseError(origin + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv(line);
        const auto hash = sv.find('#');
        if (hash != std::string_view::npos) sv = sv.substr(0, hash);
        std::istringstream fields{std::string(sv)};
        if (n < 0) {
            std::string mode;
            if (!(fields >> n >> mode)) {
                if (std::string(sv).find_first_not_of(" \t\r") == std::string::npos) {
                    n = -1;
                    continue;  // blank/comment before header
                }
                fail("expected header '<n> <directed|undirected>'");
            }
            if (n < 0) fail("target count must be nonnegative");
            if (mode == "directed")
                directed = true;
            else if (mode == "undirected")
                directed = false;
            else
                fail("directedness must be 'directed' or 'undirected', got '" + mode + "'");
            std::string extra;
            if (fields >> extra) fail("unexpected token '" + extra + "' after header");
            continue;
        }
        if (std::string(sv).find_first_not_of(" \t\r") == std::string::npos) continue;
        long long src, dst;
        double p;
        if (!(fields >> src >> dst >> p)) fail("expected '<src> <dst> <prob>'");
        std::string extra;
        if (fields >> extra) fail("unexpected token '" + extra + "' after edge");
        if (src < 0 || src >= n || dst < 0 || dst >= n)
            fail("target index out of range [0," + std::to_string(n) + ")");
        if (src == dst) fail("self-loop");
        if (!(p >= 0.0 && p <= 1.0)) fail("probability " + format_prob(p) + " outside [0,1]");
        edges.push_back({static_cast<TargetId>(src), static_cast<TargetId>(dst), p});
    }
    if (n < 0) throw ParseError(origin + ": missing header line");
    try {
        return DependencyGraph(n, directed, std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

DependencyGraph load_edge_list(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_edge_list(buf.str(), path);
}

std::string serialize_edge_list(const DependencyGraph& graph) {
    std::ostringstream out;
    out << graph.size() << (graph.directed() ? " directed" : " undirected") << "\n";
    for (const auto& e : graph.edges())
        out << e.source << " " << e.dest << " " << format_prob(e.cascade_prob) << "\n";
    return out.str();
}

void save_edge_list(const DependencyGraph& graph, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path + ": cannot open file for writing");
    out << serialize_edge_list(graph);
}

void load_worths_file(DependencyGraph& graph, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::vector<double> def(static_cast<std::size_t>(graph.size()), 0.0);
    std::vector<double> atk(static_cast<std::size_t>(graph.size()), -1.0);
    std::string line;
    int lineno = 0;
    bool any_attacker = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream fields(line);
        long long t;
        double w;
        if (!(fields >> t >> w))
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected '<target> <worth>'");
        if (t < 0 || t >= graph.size())
            throw ParseError(path + ":" + std::to_string(lineno) + ": target index out of range");
        if (!(w >= 0.0))
            throw ParseError(path + ":" + std::to_string(lineno) + ": worth must be nonnegative");
        def[static_cast<std::size_t>(t)] = w;
        double aw;
        if (fields >> aw) {
            if (!(aw >= 0.0))
                throw ParseError(path + ":" + std::to_string(lineno) +
                                 ": attacker worth must be nonnegative");
            atk[static_cast<std::size_t>(t)] = aw;
            any_attacker = true;
        }
    }
    if (any_attacker) {
        for (std::size_t i = 0; i < atk.size(); ++i)
            if (atk[i] < 0.0) atk[i] = def[i];
        graph.set_worths(std::move(def), std::move(atk));
    } else {
        graph.set_worths(std::move(def));
    }
}

void save_worths_file(const DependencyGraph& graph, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path + ": cannot open file for writing");
    const bool zero_sum_worths = graph.worths() == graph.attacker_worths();
    for (int t = 0; t < graph.size(); ++t) {
        out << t << " " << format_prob(graph.worths()[static_cast<std::size_t>(t)]);
        if (!zero_sum_worths)
            out << " " << format_prob(graph.attacker_worths()[static_cast<std::size_t>(t)]);
        out << "\n";
    }
}

}  // namespace interdep
