#include "covmark/algebra.hpp"

#include <cmath>
#include <numbers>

namespace covmark {

AlgebraState::AlgebraState(CMat density, double tol) : dim_(static_cast<int>(density.rows())) {
    if (density.rows() != density.cols() || dim_ < 1)
        throw input_error("state density must be a square matrix");
    if (!is_hermitian(density, tol)) throw input_error("state density must be Hermitian");
    if (std::abs(density.trace() - Complex(1.0, 0.0)) > tol)
        throw input_error("state density must have unit trace");
    const double lmin = lambda_min_hermitian(density);
    if (lmin <= tol)
        throw input_error("state density must be strictly positive definite (faithful state)");
    density_ = std::move(density);
}

AlgebraState AlgebraState::tracial(int dim) {
    if (dim < 1) throw input_error("tracial state needs dim >= 1");
    return AlgebraState(CMat::Identity(dim, dim) / static_cast<double>(dim));
}

AlgebraState AlgebraState::diagonal(const std::vector<double>& probabilities) {
    const int d = static_cast<int>(probabilities.size());
    CMat rho = CMat::Zero(d, d);
    for (int i = 0; i < d; ++i) rho(i, i) = probabilities[i];
    return AlgebraState(std::move(rho));
}

Complex AlgebraState::value(const Observable& x) const {
    if (x.rows() != dim_ || x.cols() != dim_)
        throw input_error("state_value: observable dimension mismatch");
    return (density_ * x).trace();
}

double AlgebraState::gns_norm2(const Observable& x) const {
    if (x.rows() != dim_ || x.cols() != dim_)
        throw input_error("gns_norm2: observable dimension mismatch");
    const double v = std::real((density_ * (x.adjoint() * x)).trace());
    return std::sqrt(std::max(v, 0.0));
}

Automorphism::Automorphism(CMat unitary, double tol) : unitary_(std::move(unitary)) {
    const int d = static_cast<int>(unitary_.rows());
    if (unitary_.cols() != d || d < 1) throw input_error("automorphism unitary must be square");
    if (max_abs(unitary_ * unitary_.adjoint() - CMat::Identity(d, d)) > tol)
        throw input_error("automorphism matrix is not unitary");
}

Automorphism Automorphism::identity(int dim) { return Automorphism(CMat::Identity(dim, dim)); }

Observable Automorphism::apply(const Observable& x) const {
    if (x.rows() != dim() || x.cols() != dim())
        throw input_error("automorphism: observable dimension mismatch");
    return unitary_ * x * unitary_.adjoint();
}

bool check_state_invariance(const AlgebraState& s, const Automorphism& a, double tol) {
    if (a.dim() != s.dim()) throw input_error("check_state_invariance: dimension mismatch");
    return max_abs(a.apply(s.density()) - s.density()) <= tol;
}

Automorphism random_state_preserving_unitary(const AlgebraState& s, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int d = s.dim();
    Eigen::SelfAdjointEigenSolver<CMat> es(s.density());
    const Eigen::VectorXd evals = es.eigenvalues();
    const CMat v = es.eigenvectors();

    // Haar-like block per group of (numerically) equal eigenvalues; the
    // assembled unitary commutes with the density matrix.
    CMat u = CMat::Zero(d, d);
    int start = 0;
    while (start < d) {
        int end = start + 1;
        while (end < d && std::abs(evals(end) - evals(start)) <= 1e-10) ++end;
        const int b = end - start;
        u.block(start, start, b, b) = haar_like_unitary(b, rng);
        start = end;
    }
    return Automorphism(v * u * v.adjoint());
}

bool operator_order_leq(const Observable& x, const Observable& y, double tol) {
    if (!is_hermitian(x) || !is_hermitian(y))
        throw input_error("operator_order_leq: inputs must be Hermitian");
    if (x.rows() != y.rows()) throw input_error("operator_order_leq: dimension mismatch");
    return lambda_min_hermitian(y - x) >= -tol;
}

namespace {

// Conjugation maps agree iff V W^{-1} is a unimodular scalar.
bool same_conjugation(const CMat& v, const CMat& w, double tol) {
    const int d = static_cast<int>(v.rows());
    CMat q = v * w.adjoint();
    const Complex scale = q.trace() / static_cast<double>(d);
    if (std::abs(std::abs(scale) - 1.0) > tol) return false;
    return max_abs(q - scale * CMat::Identity(d, d)) <= tol;
}

} // namespace

ActionAssignment::ActionAssignment(GeneratorTable gens, std::vector<Automorphism> per_symbol,
                                   double tol)
    : gens_(std::move(gens)), action_(std::move(per_symbol)) {
    if (static_cast<int>(action_.size()) != gens_.size())
        throw input_error("action assignment must cover every generator symbol");
    const int d = action_.empty() ? 0 : action_[0].dim();
    for (const auto& a : action_)
        if (a.dim() != d) throw input_error("action assignment unitaries must share dimension");
    for (int g = 0; g < gens_.size(); ++g) {
        const int inv = gens_.inverse(g);
        if (!same_conjugation(action_[inv].unitary(), action_[g].unitary().adjoint(), tol))
            throw input_error("assignment of '" + gens_.name(inv) +
                              "' does not invert the conjugation of '" + gens_.name(g) + "'");
    }
}

ActionAssignment ActionAssignment::trivial(const GeneratorTable& gens, int dim) {
    std::vector<Automorphism> a(gens.size(), Automorphism::identity(dim));
    return ActionAssignment(gens, std::move(a));
}

ActionAssignment ActionAssignment::seeded(const GroupOracle& g, const AlgebraState& s,
                                          std::uint64_t seed) {
    const GeneratorTable& gens = g.generators();
    const int d = s.dim();
    std::vector<CMat> unitaries(gens.size());

    Eigen::SelfAdjointEigenSolver<CMat> es(s.density());
    const Eigen::VectorXd evals = es.eigenvalues();
    const CMat v = es.eigenvectors();
    std::vector<std::pair<int, int>> eigen_blocks;
    {
        int start = 0;
        while (start < d) {
            int end = start + 1;
            while (end < d && std::abs(evals(end) - evals(start)) <= 1e-10) ++end;
            eigen_blocks.emplace_back(start, end - start);
            start = end;
        }
    }

    switch (g.family()) {
    case GroupFamily::FreeGroup: {
        // No relations: one independent phi-preserving unitary per factor.
        for (int f = 0; f < g.rank(); ++f) {
            CMat u = random_state_preserving_unitary(s, seed + static_cast<std::uint64_t>(f))
                         .unitary();
            unitaries[2 * f] = u;
            unitaries[2 * f + 1] = u.adjoint();
        }
        break;
    }
    case GroupFamily::FreeAbelian: {
        // Commuting family: random phases on a basis refining the density
        // eigenbasis, so the unitaries commute pairwise and with the state.
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        for (int f = 0; f < g.rank(); ++f) {
            CMat diag = CMat::Zero(d, d);
            for (int i = 0; i < d; ++i) {
                const double t = angle(rng);
                diag(i, i) = Complex(std::cos(t), std::sin(t));
            }
            CMat u = v * diag * v.adjoint();
            unitaries[2 * f] = u;
            unitaries[2 * f + 1] = u.adjoint();
        }
        break;
    }
    case GroupFamily::FreeProductCyclic: {
        // Order-m generator: unitary with spectrum in the m-th roots of
        // unity, rotated by a random unitary inside each density eigenspace.
        std::mt19937_64 rng(seed);
        int sym = 0;
        for (std::size_t f = 0; f < g.orders().size(); ++f) {
            const int m = g.orders()[f];
            std::uniform_int_distribution<int> pick(0, m - 1);
            CMat u = CMat::Zero(d, d);
            for (auto [start, b] : eigen_blocks) {
                CMat w = haar_like_unitary(b, rng);
                CMat diag = CMat::Zero(b, b);
                for (int i = 0; i < b; ++i) {
                    const double t = 2.0 * std::numbers::pi * pick(rng) / m;
                    diag(i, i) = Complex(std::cos(t), std::sin(t));
                }
                u.block(start, start, b, b) = w * diag * w.adjoint();
            }
            u = v * u * v.adjoint();
            unitaries[sym] = u;
            ++sym;
            if (m > 2) {
                unitaries[sym] = u.adjoint();
                ++sym;
            }
        }
        break;
    }
    }

    std::vector<Automorphism> autos;
    autos.reserve(unitaries.size());
    for (auto& u : unitaries) autos.emplace_back(std::move(u));
    ActionAssignment assign(gens, std::move(autos));
    assign.require_state_invariance(s);
    return assign;
}

int ActionAssignment::dim() const { return action_.empty() ? 0 : action_[0].dim(); }

CMat ActionAssignment::word_unitary(const Word& w) const {
    CMat u = CMat::Identity(dim(), dim());
    for (int id : w) {
        if (id < 0 || id >= static_cast<int>(action_.size()))
            throw input_error("apply_word: unassigned generator id " + std::to_string(id));
        u = u * action_[id].unitary();
    }
    return u;
}

Observable ActionAssignment::apply_word(const Word& w, const Observable& x) const {
    CMat u = word_unitary(w);
    return u * x * u.adjoint();
}

void ActionAssignment::require_state_invariance(const AlgebraState& s, double tol) const {
    for (int g = 0; g < gens_.size(); ++g)
        if (!check_state_invariance(s, action_[g], tol))
            throw input_error("generator '" + gens_.name(g) + "' does not preserve the state");
}

void ActionAssignment::require_relator_compatibility(const GroupOracle& g, int radius,
                                                     double tol) const {
    if (!(g.generators() == gens_))
        throw input_error("relator check: oracle generator table differs from assignment");
    for (const auto& sphere : g.spheres(radius)) {
        for (const Word& w : sphere) {
            const CMat uw = word_unitary(w);
            for (int id = 0; id < gens_.size(); ++id) {
                Word extended = w;
                extended.push_back(id);
                const CMat via_product = uw * action_[id].unitary();
                const CMat via_normal_form = word_unitary(g.reduce(extended));
                if (!same_conjugation(via_product, via_normal_form, tol))
                    throw input_error("assignment violates group relation at word '" +
                                      g.generators().name(id) + "' extension");
            }
        }
    }
}

} // namespace covmark
