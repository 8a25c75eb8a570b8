#include "covmark/automaton.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace covmark {

MarkovAutomaton::MarkovAutomaton(std::vector<std::string> vertex_names, int origin,
                                 GeneratorTable gens)
    : vertex_names_(std::move(vertex_names)), origin_(origin), gens_(std::move(gens)) {
    if (vertex_names_.empty()) throw input_error("automaton needs at least one vertex");
    if (origin_ < 0 || origin_ >= vertex_count())
        throw input_error("origin vertex index out of range");
    for (std::size_t i = 0; i < vertex_names_.size(); ++i)
        for (std::size_t j = i + 1; j < vertex_names_.size(); ++j)
            if (vertex_names_[i] == vertex_names_[j])
                throw input_error("duplicate vertex name '" + vertex_names_[i] + "'");
    out_.resize(vertex_names_.size());
}

int MarkovAutomaton::vertex_id(const std::string& name) const {
    for (int v = 0; v < vertex_count(); ++v)
        if (vertex_names_[v] == name) return v;
    return -1;
}

void MarkovAutomaton::add_edge(int from, int to, int label) {
    if (from < 0 || from >= vertex_count() || to < 0 || to >= vertex_count())
        throw input_error("edge endpoint out of range");
    if (to == origin_)
        throw input_error("edge into origin vertex '" + vertex_names_[origin_] +
                          "' violates the no-return invariant");
    if (label < 0 || label >= gens_.size())
        throw input_error("edge label id out of range");
    for (int e : out_[from])
        if (edges_[e].to == to)
            throw input_error("duplicate edge " + vertex_names_[from] + " -> " +
                              vertex_names_[to] + " (transition matrix entries must be 0 or 1)");
    out_[from].push_back(static_cast<int>(edges_.size()));
    edges_.push_back(Edge{from, to, label});
}

Eigen::MatrixXi MarkovAutomaton::transition_matrix() const {
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(vertex_count(), vertex_count());
    for (const Edge& e : edges_) a(e.from, e.to) += 1;
    return a;
}

bool MarkovAutomaton::operator==(const MarkovAutomaton& other) const {
    if (vertex_names_ != other.vertex_names_ || origin_ != other.origin_ ||
        !(gens_ == other.gens_) || edges_.size() != other.edges_.size())
        return false;
    auto key = [](const Edge& e) { return std::tuple(e.from, e.to, e.label); };
    std::vector<std::tuple<int, int, int>> a, b;
    for (const Edge& e : edges_) a.push_back(key(e));
    for (const Edge& e : other.edges_) b.push_back(key(e));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

MarkovAutomaton build_free_group_automaton(int k) {
    GroupOracle g = GroupOracle::free_group(k); // validates k >= 1
    const GeneratorTable& gens = g.generators();
    std::vector<std::string> names{"v0"};
    for (int s = 0; s < gens.size(); ++s) names.push_back(gens.name(s));
    MarkovAutomaton a(std::move(names), 0, gens);
    for (int s = 0; s < gens.size(); ++s) a.add_edge(0, 1 + s, s);
    for (int s = 0; s < gens.size(); ++s)
        for (int t = 0; t < gens.size(); ++t)
            if (t != gens.inverse(s)) a.add_edge(1 + s, 1 + t, t);
    return a;
}

MarkovAutomaton build_free_abelian_automaton(int n) {
    GroupOracle g = GroupOracle::free_abelian(n);
    const GeneratorTable& gens = g.generators();
    std::vector<std::string> names{"v0"};
    for (int s = 0; s < gens.size(); ++s) names.push_back(gens.name(s));
    MarkovAutomaton a(std::move(names), 0, gens);
    for (int s = 0; s < gens.size(); ++s) a.add_edge(0, 1 + s, s);
    // Generators are consumed in the fixed factor order; within a factor the
    // sign cannot flip, so the only same-factor move is the self-loop.
    for (int s = 0; s < gens.size(); ++s)
        for (int t = 0; t < gens.size(); ++t) {
            if (t == s)
                a.add_edge(1 + s, 1 + t, t);
            else if (t / 2 > s / 2)
                a.add_edge(1 + s, 1 + t, t);
        }
    return a;
}

MarkovAutomaton build_free_product_automaton(const std::vector<int>& orders) {
    GroupOracle g = GroupOracle::free_product_cyclic(orders); // validates shape
    const GeneratorTable& gens = g.generators();

    // Symbol metadata: factor index and maximal geodesic run length. A run of
    // c letters of symbol x codes x^c (or x^{-c}); runs longer than half the
    // factor order are never geodesic, and exact halves are spelled with the
    // positive symbol.
    std::vector<int> factor(gens.size()), max_run(gens.size());
    {
        int sym = 0;
        for (std::size_t f = 0; f < orders.size(); ++f) {
            const int m = orders[f];
            if (m == 2) {
                factor[sym] = static_cast<int>(f);
                max_run[sym] = 1;
                ++sym;
            } else {
                factor[sym] = static_cast<int>(f);
                max_run[sym] = m / 2;
                ++sym;
                factor[sym] = static_cast<int>(f);
                max_run[sym] = (m - 1) / 2;
                ++sym;
            }
        }
    }

    std::vector<std::string> names{"v0"};
    std::map<std::pair<int, int>, int> vertex_of; // (symbol, run length) -> vertex
    for (int s = 0; s < gens.size(); ++s)
        for (int c = 1; c <= max_run[s]; ++c) {
            vertex_of[{s, c}] = static_cast<int>(names.size());
            names.push_back(c == 1 ? gens.name(s) : gens.name(s) + "." + std::to_string(c));
        }

    MarkovAutomaton a(std::move(names), 0, gens);
    for (int s = 0; s < gens.size(); ++s) a.add_edge(0, vertex_of[{s, 1}], s);
    for (int s = 0; s < gens.size(); ++s)
        for (int c = 1; c <= max_run[s]; ++c) {
            const int v = vertex_of[{s, c}];
            if (c + 1 <= max_run[s]) a.add_edge(v, vertex_of[{s, c + 1}], s);
            for (int t = 0; t < gens.size(); ++t)
                if (factor[t] != factor[s]) a.add_edge(v, vertex_of[{t, 1}], t);
        }
    return a;
}

std::vector<BigInt> path_count_series(const MarkovAutomaton& a, int n_max) {
    if (n_max < 0) throw input_error("path_count_series: n_max must be >= 0");
    std::vector<BigInt> counts;
    std::vector<BigInt> u(a.vertex_count(), 0);
    u[a.origin()] = 1;
    BigInt total = 1;
    counts.push_back(total);
    for (int n = 1; n <= n_max; ++n) {
        std::vector<BigInt> next(a.vertex_count(), 0);
        for (const Edge& e : a.edges()) next[e.to] += u[e.from];
        u = std::move(next);
        total = 0;
        for (const BigInt& c : u) total += c;
        counts.push_back(total);
    }
    return counts;
}

BigInt count_paths(const MarkovAutomaton& a, int n) {
    if (n < 0) throw input_error("count_paths: n must be >= 0");
    return path_count_series(a, n).back();
}

void walk_paths(const MarkovAutomaton& a, int n,
                const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> stack;
    auto rec = [&](auto&& self, int vertex, int remaining) -> void {
        if (remaining == 0) {
            fn(stack);
            return;
        }
        for (int e : a.out_edges(vertex)) {
            stack.push_back(e);
            self(self, a.edges()[e].to, remaining - 1);
            stack.pop_back();
        }
    };
    rec(rec, a.origin(), n);
}

Word path_word(const MarkovAutomaton& a, const std::vector<int>& edge_indices) {
    Word w;
    w.reserve(edge_indices.size());
    for (int e : edge_indices) w.push_back(a.edges().at(e).label);
    return w;
}

StrongMarkovReport verify_strong_markov(const MarkovAutomaton& a, const GroupOracle& g,
                                        int radius, std::uint64_t guard) {
    if (!(a.generators() == g.generators()))
        throw input_error("verify_strong_markov: automaton and oracle generator tables differ");
    if (radius < 0) throw input_error("verify_strong_markov: radius must be >= 0");

    BigInt total = 0;
    auto series = path_count_series(a, radius);
    for (const BigInt& c : series) total += c;
    if (total > BigInt(guard))
        throw resource_error("verify_strong_markov: path count exceeds enumeration guard");

    StrongMarkovReport report;
    report.radius = radius;

    auto spheres = g.spheres(radius, guard);
    std::vector<WordSet> hit(radius + 1);

    auto describe = [&](const Word& w) {
        std::ostringstream os;
        if (w.empty()) os << "e";
        for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "." : "") << g.generators().name(w[i]);
        return os.str();
    };

    for (int n = 0; n <= radius; ++n) {
        walk_paths(a, n, [&](const std::vector<int>& path) {
            Word label = path_word(a, path);
            Word nf = g.reduce(label);
            if (report.geodesic && static_cast<int>(nf.size()) != n) {
                report.geodesic = false;
                if (report.detail.empty())
                    report.detail = "path " + describe(label) + " has element length " +
                                    std::to_string(nf.size()) + " != path length " +
                                    std::to_string(n);
            }
            if (!hit[n].insert(nf).second && report.injective) {
                report.injective = false;
                if (report.detail.empty())
                    report.detail =
                        "two length-" + std::to_string(n) + " paths code element " + describe(nf);
            }
        });
        for (const Word& w : spheres[n]) {
            if (!hit[n].count(w)) {
                report.surjective = false;
                if (report.detail.empty())
                    report.detail = "element " + describe(w) + " of length " + std::to_string(n) +
                                    " is not coded by any path";
                break;
            }
        }
    }
    return report;
}

} // namespace covmark
