#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace interdep {

using TargetId = int;

struct Edge {
    TargetId source = 0;
    TargetId dest = 0;
    double cascade_prob = 0.0;
};

// Thrown on malformed input files and invalid graph structure.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Targets with intrinsic worths plus dependency edges carrying cascade
// probabilities. Undirected graphs store each pair once with
// source < dest; edges are kept sorted by (source, dest) so everything
// downstream (sampling, serialization) sees one canonical order.
class DependencyGraph {
public:
    DependencyGraph() = default;
    DependencyGraph(int n, bool directed, std::vector<Edge> edges);

    int size() const { return n_; }
    bool directed() const { return directed_; }
    const std::vector<Edge>& edges() const { return edges_; }

    const std::vector<double>& worths() const { return worths_; }
    const std::vector<double>& attacker_worths() const { return attacker_worths_; }
    void set_worths(std::vector<double> defender, std::vector<double> attacker = {});

    std::vector<int> degrees() const;
    double total_worth() const;
    double total_attacker_worth() const;

private:
    int n_ = 0;
    bool directed_ = false;
    std::vector<Edge> edges_;
    std::vector<double> worths_;           // all zero until assigned
    std::vector<double> attacker_worths_;  // defaults to worths_
};

// Pairwise cascade probabilities, either the sparse edge list of a
// DependencyGraph or a dense matrix (the shape the noise transform
// produces, where every pair is a potential edge).
class CascadeModel {
public:
    static CascadeModel sparse(DependencyGraph graph);
    static CascadeModel dense(DependencyGraph graph, std::vector<double> probs);

    bool is_dense() const { return dense_; }
    bool directed() const { return graph_.directed(); }
    int size() const { return graph_.size(); }
    const DependencyGraph& graph() const { return graph_; }

    // Probability of a cascade along (from, to). For undirected models
    // the pair is unordered.
    double prob(TargetId from, TargetId to) const;

    // Pairs with nonzero probability, canonically ordered. For
    // undirected models these satisfy source < dest.
    const std::vector<Edge>& live_candidates() const { return candidates_; }

private:
    DependencyGraph graph_;
    bool dense_ = false;
    std::vector<double> dense_probs_;  // n*n, row-major, only when dense_
    std::vector<Edge> candidates_;
};

// --- generators ------------------------------------------------------

// G(n, p): each unordered pair carries an edge independently with
// probability p. Worths are left at zero until assign_worths.
DependencyGraph generate_erdos_renyi(int n, double p, std::uint64_t seed,
                                     bool directed = false, double cascade_prob = 0.5);

// Generalized preferential attachment: starts from a 2-node seed graph
// with one edge; node i attaches to m distinct existing nodes (all of
// them when i <= m) with probability proportional to degree^mu.
DependencyGraph generate_preferential_attachment(int n, int m, double mu,
                                                 std::uint64_t seed,
                                                 double cascade_prob = 0.5);

struct WorthAssignment {
    enum class Mode { Uniform01, Constant, Explicit };
    Mode mode = Mode::Uniform01;
    std::uint64_t seed = 0;              // Uniform01
    double value = 0.0;                  // Constant
    std::vector<double> values;          // Explicit
    std::vector<double> attacker_values; // Explicit, optional
};

DependencyGraph assign_worths(DependencyGraph graph, const WorthAssignment& assignment);

// --- edge-noise transform (dense) ------------------------------------

// Observed pairs keep probability p*(1-eps); unobserved pairs become
// base_p*eps. Produces a dense model; n is capped because the matrix
// is materialized.
CascadeModel apply_edge_noise(const DependencyGraph& graph, double epsilon, double base_p);

// --- file I/O ---------------------------------------------------------

// Edge-list text format: line 1 `<n> <directed|undirected>`, then
// `<src> <dst> <prob>` lines; '#' starts a comment line.
DependencyGraph load_edge_list(const std::string& path);
void save_edge_list(const DependencyGraph& graph, const std::string& path);
std::string serialize_edge_list(const DependencyGraph& graph);
DependencyGraph parse_edge_list(const std::string& text, const std::string& origin = "<string>");

// Worth file: `<target> <worth> [<attacker_worth>]` per line.
void load_worths_file(DependencyGraph& graph, const std::string& path);
void save_worths_file(const DependencyGraph& graph, const std::string& path);

}  // namespace interdep
