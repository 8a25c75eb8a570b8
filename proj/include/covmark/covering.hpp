#pragma once

#include "covmark/algebra.hpp"
#include "covmark/spectral.hpp"

namespace covmark {

/// Element of M x Z_k: one observable per non-origin vertex of the automaton.
/// The origin carries no slot; sphere sums are read out there on demand.
class CoveringElement {
public:
    CoveringElement(int slot_count, int dim)
        : dim_(dim), slots_(slot_count, CMat::Zero(dim, dim)) {}

    static CoveringElement constant_lift(const Observable& x, int slot_count) {
        CoveringElement e(slot_count, static_cast<int>(x.rows()));
        for (auto& s : e.slots_) s = x;
        return e;
    }

    int slot_count() const { return static_cast<int>(slots_.size()); }
    int dim() const { return dim_; }
    CMat& slot(int i) { return slots_.at(i); }
    const CMat& slot(int i) const { return slots_.at(i); }

    CoveringElement operator+(const CoveringElement& other) const {
        CoveringElement out(slot_count(), dim_);
        for (int i = 0; i < slot_count(); ++i) out.slots_[i] = slots_[i] + other.slots_[i];
        return out;
    }

    double max_abs_difference(const CoveringElement& other) const {
        double m = 0.0;
        for (int i = 0; i < slot_count(); ++i)
            m = std::max(m, max_abs(slots_[i] - other.slots_[i]));
        return m;
    }

private:
    int dim_;
    std::vector<CMat> slots_;
};

/// The covering Markov operator P on M x Z_k determined by an automaton and a
/// generator action: (P xi)_v = sum over edges e out of v of T_label(e)
/// applied to xi at the edge target. Read-out at the origin of P^n applied to
/// a constant lift yields the spherical automorphism sum of radius n.
class CoveringOperator {
public:
    CoveringOperator(MarkovAutomaton automaton, ActionAssignment action);

    const MarkovAutomaton& automaton() const { return automaton_; }
    const ActionAssignment& action() const { return action_; }
    const BlockDecomposition& decomposition() const { return spectrum_.decomposition; }
    const SpectralReport& spectral_report() const { return spectrum_.report; }
    int dim() const { return action_.dim(); }
    int slot_count() const { return automaton_.vertex_count() - 1; }

    int slot_of_vertex(int v) const;
    int vertex_of_slot(int s) const;

    CoveringElement apply(const CoveringElement& xi) const;          // P = D + Q
    CoveringElement apply_diagonal(const CoveringElement& xi) const; // D: in-block edges
    CoveringElement apply_cross(const CoveringElement& xi) const;    // Q: cross-block edges

    /// Origin component of P applied to xi.
    Observable read_out_origin(const CoveringElement& xi) const;

    /// Sum of gamma(x) over the sphere of radius n (n >= 1), via n-1
    /// applications of P and one origin read-out; n = 0 gives x itself.
    Observable sphere_sum(const Observable& x, int n) const;

private:
    MarkovAutomaton automaton_;
    ActionAssignment action_;
    SpectralAnalysis spectrum_;
    // Outgoing edges per vertex with in-block edges first, then cross-block,
    // each group in insertion order; this fixed order makes P = D + Q hold
    // addition-for-addition.
    struct OutEdges {
        std::vector<int> diagonal;
        std::vector<int> cross;
    };
    std::vector<OutEdges> out_;

    Observable accumulate(const std::vector<int>& edge_indices, const CoveringElement& xi) const;
};

/// Independent oracle for the covering identity: direct summation of
/// apply_word over the brute-force enumerated sphere.
Observable sphere_sum_bruteforce(const ActionAssignment& assign, const GroupOracle& g,
                                 const Observable& x, int n,
                                 std::uint64_t guard = GroupOracle::kBallGuard);

/// Extension of the state to the tuple algebra: the mean of the slot values.
Complex extend_state(const AlgebraState& s, const CoveringElement& xi);

struct D1Report {
    int block = -1;
    int power = 0;
    double max_deviation = 0.0;
};

/// Verifies D^q = rho^q L_w R^q L_w^{-1} on the slots of a contributing
/// block, where R is the operator built from the stochastic normalization and
/// L_w scales slot i by w(i). Input xi is restricted to the block's slots.
D1Report verify_D1(const CoveringOperator& p, int block_index, int q, const CoveringElement& xi);

} // namespace covmark
