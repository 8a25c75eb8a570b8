#pragma once

#include <cstdint>
#include <vector>

#include "covmark/linalg.hpp"
#include "covmark/words.hpp"

namespace covmark {

/// Observables are plain complex matrices.
using Observable = CMat;

/// A d x d matrix algebra with a faithful state phi(x) = trace(density * x).
/// The density matrix must be Hermitian, strictly positive definite and of
/// unit trace.
class AlgebraState {
public:
    explicit AlgebraState(CMat density, double tol = 1e-12);
    static AlgebraState tracial(int dim);
    static AlgebraState diagonal(const std::vector<double>& probabilities);

    int dim() const { return dim_; }
    const CMat& density() const { return density_; }

    Complex value(const Observable& x) const;
    double gns_norm2(const Observable& x) const; // sqrt(phi(x* x))

private:
    int dim_;
    CMat density_;
};

/// Inner automorphism x -> U x U* of the matrix algebra.
class Automorphism {
public:
    explicit Automorphism(CMat unitary, double tol = 1e-12);
    static Automorphism identity(int dim);

    int dim() const { return static_cast<int>(unitary_.rows()); }
    const CMat& unitary() const { return unitary_; }
    Observable apply(const Observable& x) const;
    Automorphism inverse() const { return Automorphism(unitary_.adjoint()); }

private:
    CMat unitary_;
};

/// True iff conjugation by the automorphism fixes the density matrix
/// (the exact finite-dimensional form of phi-invariance).
bool check_state_invariance(const AlgebraState& s, const Automorphism& a, double tol = 1e-12);

/// phi-preserving unitary drawn block-diagonally with respect to the
/// eigenspaces of the density matrix; deterministic in the seed.
Automorphism random_state_preserving_unitary(const AlgebraState& s, std::uint64_t seed);

/// x <= y in operator order, up to tol on the smallest eigenvalue of y - x.
/// Both inputs must be Hermitian.
bool operator_order_leq(const Observable& x, const Observable& y, double tol);

/// Generator -> automorphism map. Construction verifies involution
/// compatibility: the assignment of g^-1 must invert the conjugation of g.
class ActionAssignment {
public:
    ActionAssignment(GeneratorTable gens, std::vector<Automorphism> per_symbol,
                     double tol = 1e-12);
    static ActionAssignment trivial(const GeneratorTable& gens, int dim);
    /// Family-aware random assignment: unrestricted unitaries for free groups,
    /// commuting phase unitaries for free abelian groups, order-m root
    /// unitaries for free products of cyclics. Always state-preserving.
    static ActionAssignment seeded(const GroupOracle& g, const AlgebraState& s,
                                   std::uint64_t seed);

    const GeneratorTable& generators() const { return gens_; }
    int dim() const;
    const Automorphism& of(int symbol) const { return action_.at(symbol); }

    /// Ordered product of the letters' unitaries.
    CMat word_unitary(const Word& w) const;
    /// T_{e1}(T_{e2}(...T_{ek}(x))), i.e. conjugation by word_unitary(w).
    Observable apply_word(const Word& w, const Observable& x) const;

    /// Every generator's automorphism must fix the state; throws input_error
    /// naming the first offender.
    void require_state_invariance(const AlgebraState& s, double tol = 1e-12) const;
    /// Words equal in the group must act identically; checked exhaustively on
    /// the ball of the given radius. Throws input_error on violation.
    void require_relator_compatibility(const GroupOracle& g, int radius,
                                       double tol = 1e-12) const;

private:
    GeneratorTable gens_;
    std::vector<Automorphism> action_;
};

} // namespace covmark
