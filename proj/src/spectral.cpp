#include "covmark/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace covmark {

Eigen::MatrixXi BlockDecomposition::block_matrix(int j) const {
    const int s = block_start.at(j);
    const int n = static_cast<int>(blocks.at(j).size());
    return permuted.block(s, s, n, n);
}

Eigen::MatrixXi BlockDecomposition::coupling(int i, int j) const {
    if (i <= j) throw input_error("coupling blocks live strictly below the diagonal");
    const int si = block_start.at(i), ni = static_cast<int>(blocks.at(i).size());
    const int sj = block_start.at(j), nj = static_cast<int>(blocks.at(j).size());
    return permuted.block(si, sj, ni, nj);
}

bool BlockDecomposition::is_trivial_zero(int j) const {
    return blocks.at(j).size() == 1 && block_matrix(j)(0, 0) == 0;
}

std::vector<std::pair<int, int>> BlockDecomposition::condensation_edges() const {
    std::vector<std::pair<int, int>> seen;
    const int m = permuted.rows();
    std::vector<int> block_at(m);
    for (int p = 0; p < m; ++p) block_at[p] = block_of[order[p]];
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            if (permuted(p, q) != 0 && block_at[p] != block_at[q])
                seen.emplace_back(block_at[p], block_at[q]);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    return seen;
}

namespace {

// Iterative Tarjan SCC. Components are emitted in reverse topological order
// of the condensation (successors first), which is what block lower
// triangular form needs; the final ordering is still re-derived with the
// deterministic tie-break below.
std::pair<int, std::vector<int>> tarjan_scc(const Eigen::MatrixXi& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a(i, j) != 0) adj[i].push_back(j);

    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0, comp_count = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.child < adj[f.v].size()) {
                int w = adj[f.v][f.child++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = comp_count;
                        if (w == f.v) break;
                    }
                    ++comp_count;
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty()) {
                    int parent = call.back().v;
                    low[parent] = std::min(low[parent], low[v]);
                }
            }
        }
    }
    return {comp_count, comp};
}

} // namespace

BlockDecomposition scc_decompose(const Eigen::MatrixXi& a) {
    if (a.rows() != a.cols()) throw input_error("scc_decompose: matrix must be square");
    const int n = static_cast<int>(a.rows());
    auto [comp_count, comp] = tarjan_scc(a);

    // Members per raw component, sorted by original index.
    std::vector<std::vector<int>> members(comp_count);
    for (int v = 0; v < n; ++v) members[comp[v]].push_back(v);
    for (auto& m : members) std::sort(m.begin(), m.end());

    // Kahn on the reversed condensation: a component becomes available once
    // all its successors are placed, so every edge ends in an earlier block.
    std::vector<std::vector<int>> succ(comp_count);
    std::vector<int> pending(comp_count, 0); // unplaced successors
    {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (a(i, j) != 0 && comp[i] != comp[j]) edges.emplace_back(comp[i], comp[j]);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        for (auto [c, d] : edges) {
            succ[c].push_back(d);
            ++pending[c];
        }
    }
    std::vector<std::vector<int>> pred(comp_count);
    for (int c = 0; c < comp_count; ++c)
        for (int d : succ[c]) pred[d].push_back(c);

    // Min-heap keyed by the component's lowest original vertex.
    std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>, std::greater<>> ready;
    for (int c = 0; c < comp_count; ++c)
        if (pending[c] == 0) ready.emplace(members[c][0], c);

    BlockDecomposition d;
    d.block_of.assign(n, -1);
    while (!ready.empty()) {
        auto [key, c] = ready.top();
        ready.pop();
        const int block_index = d.block_count();
        d.block_start.push_back(static_cast<int>(d.order.size()));
        d.blocks.push_back(members[c]);
        for (int v : members[c]) {
            d.block_of[v] = block_index;
            d.order.push_back(v);
        }
        for (int p : pred[c])
            if (--pending[p] == 0) ready.emplace(members[p][0], p);
    }
    if (static_cast<int>(d.order.size()) != n)
        throw input_error("scc_decompose: condensation ordering failed"); // unreachable

    d.permuted = Eigen::MatrixXi::Zero(n, n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) d.permuted(p, q) = a(d.order[p], d.order[q]);
    return d;
}

double spectral_radius(const Eigen::MatrixXd& block, double rel_tol, int max_iter) {
    if (block.rows() != block.cols()) throw input_error("spectral_radius: matrix must be square");
    if (block.minCoeff() < 0.0) throw input_error("spectral_radius: matrix must be nonnegative");
    const int n = static_cast<int>(block.rows());
    if (n == 1) return block(0, 0);

    // Power iteration on A + I: the shift makes periodic irreducible blocks
    // primitive, and the Collatz-Wielandt ratios of a positive iterate
    // enclose the Perron root.
    Eigen::MatrixXd m = block + Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    double lo = 0.0, hi = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXd y = m * x;
        lo = std::numeric_limits<double>::infinity();
        hi = 0.0;
        for (int i = 0; i < n; ++i) {
            const double r = y(i) / x(i);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        if (hi - lo <= rel_tol * hi) return 0.5 * (lo + hi) - 1.0;
        x = y / y.maxCoeff();
    }
    throw convergence_error("spectral_radius: no convergence after " + std::to_string(max_iter) +
                            " iterations (enclosure width " + std::to_string(hi - lo) + ")");
}

int block_period(const Eigen::MatrixXi& block) {
    const int n = static_cast<int>(block.rows());
    // BFS levels from vertex 0; the period is the gcd of (level(u)+1-level(v))
    // over edges u->v.
    std::vector<int> level(n, -1);
    std::queue<int> q;
    level[0] = 0;
    q.push(0);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v = 0; v < n; ++v)
            if (block(u, v) != 0 && level[v] == -1) {
                level[v] = level[u] + 1;
                q.push(v);
            }
    }
    int g = 0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (block(u, v) != 0 && level[u] != -1 && level[v] != -1)
                g = std::gcd(g, std::abs(level[u] + 1 - level[v]));
    return g;
}

SpectralReport growth_rate(const MarkovAutomaton& a, const BlockDecomposition& d,
                           double contributing_tol, int probe_depth) {
    SpectralReport r;
    for (int j = 0; j < d.block_count(); ++j) {
        Eigen::MatrixXi b = d.block_matrix(j);
        r.block_radius.push_back(spectral_radius(b.cast<double>()));
        r.period.push_back(block_period(b));
    }
    r.rho = 0.0;
    for (double br : r.block_radius) r.rho = std::max(r.rho, br);
    const double cutoff = r.rho - contributing_tol * std::max(r.rho, 1.0);
    r.rho1 = 0.0;
    for (int j = 0; j < d.block_count(); ++j) {
        const bool contrib = r.block_radius[j] >= cutoff;
        r.contributing.push_back(contrib);
        if (contrib)
            ++r.contributing_count;
        else
            r.rho1 = std::max(r.rho1, r.block_radius[j]);
    }

    r.probe_depth = probe_depth;
    if (probe_depth > 0) {
        BigInt c = count_paths(a, probe_depth);
        const double lc = static_cast<double>(c);
        r.empirical_rate = std::pow(lc, 1.0 / probe_depth);
        r.empirical_within_10pct =
            r.rho > 0.0 && std::abs(r.empirical_rate - r.rho) <= 0.10 * r.rho;
    }
    return r;
}

SpectralAnalysis analyze_spectrum(const MarkovAutomaton& a) {
    SpectralAnalysis s;
    s.decomposition = scc_decompose(a.transition_matrix());
    s.report = growth_rate(a, s.decomposition);
    return s;
}

SingleCrossingReport verify_single_crossing(const Eigen::MatrixXi& a, const BlockDecomposition& d,
                                            const std::vector<bool>& contributing) {
    const int n = static_cast<int>(a.rows());
    SingleCrossingReport rep;
    // BFS in the original digraph from each contributing block; stopping
    // inside a different contributing block yields a witness path.
    for (int c = 0; c < d.block_count(); ++c) {
        if (!contributing[c]) continue;
        std::vector<int> parent(n, -2);
        std::queue<int> q;
        for (int v : d.blocks[c]) {
            parent[v] = -1;
            q.push(v);
        }
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v = 0; v < n; ++v) {
                if (a(u, v) == 0 || parent[v] != -2) continue;
                parent[v] = u;
                const int bv = d.block_of[v];
                if (bv != c && contributing[bv]) {
                    rep.ok = false;
                    for (int w = v; w != -1; w = parent[w]) rep.witness.push_back(w);
                    std::reverse(rep.witness.begin(), rep.witness.end());
                    return rep;
                }
                q.push(v);
            }
        }
    }
    return rep;
}

NoncontributingPathReport noncontributing_path_counts(const MarkovAutomaton& a,
                                                      const BlockDecomposition& d,
                                                      const std::vector<bool>& contributing,
                                                      int n_max) {
    if (n_max < 0 || n_max > 40)
        throw input_error("noncontributing_path_counts: n_max must be in [0, 40]");
    NoncontributingPathReport rep;
    std::vector<bool> removed(a.vertex_count(), false);
    for (int v = 0; v < a.vertex_count(); ++v) removed[v] = contributing[d.block_of[v]];

    std::vector<BigInt> u(a.vertex_count(), 0);
    if (!removed[a.origin()]) u[a.origin()] = 1;
    BigInt total = removed[a.origin()] ? 0 : 1;
    rep.counts.push_back(total);
    for (int n = 1; n <= n_max; ++n) {
        std::vector<BigInt> next(a.vertex_count(), 0);
        for (const Edge& e : a.edges())
            if (!removed[e.from] && !removed[e.to]) next[e.to] += u[e.from];
        u = std::move(next);
        total = 0;
        for (const BigInt& c : u) total += c;
        rep.counts.push_back(total);
    }

    for (std::size_t n = 0; n + 1 < rep.counts.size(); ++n) {
        if (rep.counts[n] > 0)
            rep.ratios.push_back(static_cast<double>(rep.counts[n + 1]) /
                                 static_cast<double>(rep.counts[n]));
    }

    // Prop 1(d) bound with the constant fitted on the first five terms.
    double rho1 = 0.0;
    for (int j = 0; j < d.block_count(); ++j)
        if (!contributing[j])
            rho1 = std::max(rho1, spectral_radius(d.block_matrix(j).cast<double>()));
    rep.base = std::max(rho1, 1.0);
    double c = 0.0;
    for (int n = 1; n <= std::min<int>(5, n_max); ++n)
        c = std::max(c, static_cast<double>(rep.counts[n]) / std::pow(rep.base, n));
    rep.bound_constant = c;
    for (int n = 1; n <= n_max; ++n) {
        const double bound = c * std::pow(rep.base, n) * (1.0 + 1e-12);
        if (static_cast<double>(rep.counts[n]) > bound) {
            rep.bound_holds = false;
            break;
        }
    }
    return rep;
}

namespace {

bool is_irreducible(const Eigen::MatrixXi& block) {
    const int n = static_cast<int>(block.rows());
    if (n == 1) return block(0, 0) != 0; // by convention here: needs the self-loop
    for (int s = 0; s < n; ++s) {
        std::vector<bool> seen(n, false);
        std::queue<int> q;
        q.push(s);
        seen[s] = true;
        int reached = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v = 0; v < n; ++v)
                if (block(u, v) != 0 && !seen[v]) {
                    seen[v] = true;
                    ++reached;
                    q.push(v);
                }
        }
        if (reached != n) return false;
    }
    return true;
}

} // namespace

PerronData perron_vector(const Eigen::MatrixXi& block, double rel_tol, int max_iter) {
    const int n = static_cast<int>(block.rows());
    if (block.rows() != block.cols()) throw input_error("perron_vector: matrix must be square");
    if (!is_irreducible(block))
        throw input_error("perron_vector: block is not irreducible with positive spectral radius");

    PerronData pd;
    pd.rho = spectral_radius(block.cast<double>(), rel_tol, max_iter);
    if (pd.rho <= 0.0) throw input_error("perron_vector: spectral radius is not positive");

    Eigen::MatrixXd m = block.cast<double>() + Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXd y = m * x;
        x = y / y.maxCoeff();
        const double resid = (m * x - (pd.rho + 1.0) * x).cwiseAbs().maxCoeff();
        if (resid <= rel_tol * (pd.rho + 1.0)) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw convergence_error("perron_vector: eigenvector iteration did not converge");
    pd.w = x / x.maxCoeff();

    pd.R = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (block(i, j) != 0) pd.R(i, j) = block(i, j) * pd.w(j) / (pd.rho * pd.w(i));
    return pd;
}

GrowthConstants growth_constants(const MarkovAutomaton& a, double rho, int n_max) {
    if (n_max < 1 || n_max > 40) throw input_error("growth_constants: n_max must be in [1, 40]");
    if (rho <= 0.0) throw input_error("growth_constants: rho must be positive");
    auto counts = path_count_series(a, n_max);
    GrowthConstants gc;
    gc.c1 = std::numeric_limits<double>::infinity();
    gc.c2 = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const double ratio = static_cast<double>(counts[n]) / std::pow(rho, n);
        gc.c1 = std::min(gc.c1, ratio);
        gc.c2 = std::max(gc.c2, ratio);
    }
    return gc;
}

} // namespace covmark
