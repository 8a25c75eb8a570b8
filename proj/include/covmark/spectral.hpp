#pragma once

#include <vector>

#include <Eigen/Core>

#include "covmark/automaton.hpp"

namespace covmark {

/// Strongly connected components of the transition digraph, ordered so that
/// the permuted matrix is block lower triangular: every edge goes from a
/// later block to an earlier one or stays inside a block. Ties between
/// incomparable components break towards the lowest original vertex index.
struct BlockDecomposition {
    std::vector<int> order;                // new position -> original vertex
    std::vector<int> block_of;             // original vertex -> block index
    std::vector<std::vector<int>> blocks;  // block -> original vertices, in permuted order
    std::vector<int> block_start;          // offset of each block in `order`
    Eigen::MatrixXi permuted;              // P A P^T

    int block_count() const { return static_cast<int>(blocks.size()); }
    Eigen::MatrixXi block_matrix(int j) const;
    Eigen::MatrixXi coupling(int i, int j) const; // below-diagonal block, i > j
    /// True for a single vertex without a self-loop.
    bool is_trivial_zero(int j) const;
    /// Condensation edges as (from block, to block) pairs, deduplicated.
    std::vector<std::pair<int, int>> condensation_edges() const;
};

BlockDecomposition scc_decompose(const Eigen::MatrixXi& a);

/// Perron root of a nonnegative matrix by power iteration on A + I from the
/// all-ones vector, with Collatz-Wielandt enclosure at relative tolerance.
double spectral_radius(const Eigen::MatrixXd& block, double rel_tol = 1e-12,
                       int max_iter = 100000);

/// gcd of cycle lengths through a fixed vertex of an irreducible block;
/// 0 when the block has no cycle.
int block_period(const Eigen::MatrixXi& block);

struct SpectralReport {
    double rho = 0.0;  // max block spectral radius
    double rho1 = 0.0; // max over non-contributing blocks
    std::vector<double> block_radius;
    std::vector<bool> contributing;
    std::vector<int> period;
    int contributing_count = 0;
    // Diagnostic: count_paths(n)^(1/n) at the probe depth vs rho.
    int probe_depth = 0;
    double empirical_rate = 0.0;
    bool empirical_within_10pct = true;
};

/// Per-block spectral radii, contributing flags and the growth rate of the
/// automaton. The empirical-rate cross-check is diagnostic only.
SpectralReport growth_rate(const MarkovAutomaton& a, const BlockDecomposition& d,
                           double contributing_tol = 1e-9, int probe_depth = 20);

struct SpectralAnalysis {
    BlockDecomposition decomposition;
    SpectralReport report;
};

SpectralAnalysis analyze_spectrum(const MarkovAutomaton& a);

struct SingleCrossingReport {
    bool ok = true;
    // On failure: a vertex path from inside one contributing block to inside
    // another.
    std::vector<int> witness;
};

/// Prop 1(c): no directed path meets two contributing components.
SingleCrossingReport verify_single_crossing(const Eigen::MatrixXi& a,
                                            const BlockDecomposition& d,
                                            const std::vector<bool>& contributing);

struct NoncontributingPathReport {
    std::vector<BigInt> counts;   // c(n), n = 0..n_max
    std::vector<double> ratios;   // c(n+1)/c(n) where defined
    double bound_constant = 0.0;  // C fitted on the first terms
    double base = 1.0;            // max(rho1, 1)
    bool bound_holds = true;      // c(n) <= C * base^n for all n
};

/// Prop 1(d): counts of origin paths avoiding every contributing block,
/// computed with contributing rows and columns zeroed out.
NoncontributingPathReport noncontributing_path_counts(const MarkovAutomaton& a,
                                                      const BlockDecomposition& d,
                                                      const std::vector<bool>& contributing,
                                                      int n_max);

struct PerronData {
    double rho = 0.0;
    Eigen::VectorXd w; // positive eigenvector, max entry 1
    Eigen::MatrixXd R; // row-stochastic normalization rho^-1 A(i,j) w(j)/w(i)
};

/// Perron eigenvector and stochastic normalization of an irreducible block
/// with positive spectral radius.
PerronData perron_vector(const Eigen::MatrixXi& block, double rel_tol = 1e-13,
                         int max_iter = 100000);

struct GrowthConstants {
    double c1 = 0.0;
    double c2 = 0.0;
};

/// Tightest constants with C1 rho^n <= N(n) <= C2 rho^n over n in [1, n_max].
GrowthConstants growth_constants(const MarkovAutomaton& a, double rho, int n_max);

} // namespace covmark
