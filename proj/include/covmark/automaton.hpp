#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include "covmark/words.hpp"

namespace covmark {

using BigInt = boost::multiprecision::cpp_int;

struct Edge {
    int from;
    int to;
    int label; // generator symbol id
};

/// Finite directed graph with a distinguished origin that codes geodesics:
/// length-n paths from the origin correspond to group elements of length n
/// when the automaton is strongly Markov for the group. Immutable once built;
/// all queries are read-only.
class MarkovAutomaton {
public:
    MarkovAutomaton(std::vector<std::string> vertex_names, int origin, GeneratorTable gens);

    /// Adds an edge; rejects edges into the origin, duplicate ordered pairs,
    /// and unknown labels or endpoints.
    void add_edge(int from, int to, int label);

    int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
    int origin() const { return origin_; }
    const std::string& vertex_name(int v) const { return vertex_names_.at(v); }
    int vertex_id(const std::string& name) const;
    const GeneratorTable& generators() const { return gens_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& out_edges(int v) const { return out_.at(v); }

    /// 0/1 matrix with a_ij = number of edges v_i -> v_j.
    Eigen::MatrixXi transition_matrix() const;

    bool operator==(const MarkovAutomaton& other) const;

private:
    std::vector<std::string> vertex_names_;
    int origin_;
    GeneratorTable gens_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_; // vertex -> edge indices, insertion order
};

MarkovAutomaton build_free_group_automaton(int k);
MarkovAutomaton build_free_abelian_automaton(int n);
MarkovAutomaton build_free_product_automaton(const std::vector<int>& orders);

/// Number of length-n paths from the origin, Sum_j (A^n)_{v0 j}. Exact
/// arbitrary-precision arithmetic throughout; no wraparound at any n.
BigInt count_paths(const MarkovAutomaton& a, int n);

/// Path counts for n = 0..n_max in one sweep.
std::vector<BigInt> path_count_series(const MarkovAutomaton& a, int n_max);

/// Invokes fn for every length-n path from the origin with the path's edge
/// indices. Deterministic DFS in edge insertion order.
void walk_paths(const MarkovAutomaton& a, int n,
                const std::function<void(const std::vector<int>&)>& fn);

/// Label word of a path given by edge indices.
Word path_word(const MarkovAutomaton& a, const std::vector<int>& edge_indices);

struct StrongMarkovReport {
    int radius = 0;
    bool geodesic = true;   // every path label word has word length == path length
    bool injective = true;  // distinct paths map to distinct elements
    bool surjective = true; // every element of length <= radius is hit
    std::string detail;     // first counterexample, if any
    bool all() const { return geodesic && injective && surjective; }
};

/// Exhaustive strong-Markov check up to `radius`: geodesic, injective and
/// surjective path coding against the oracle's ball enumeration.
StrongMarkovReport verify_strong_markov(const MarkovAutomaton& a, const GroupOracle& g,
                                        int radius,
                                        std::uint64_t guard = GroupOracle::kBallGuard);

} // namespace covmark
