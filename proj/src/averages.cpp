#include "covmark/averages.hpp"

#include <cmath>

namespace covmark {

CesaroEvaluator::CesaroEvaluator(const CoveringOperator& p, Observable x, double rho)
    : p_(&p), rho_(rho), xi_(CoveringElement::constant_lift(x, p.slot_count())),
      weighted_sum_(CMat::Zero(p.dim(), p.dim())) {
    if (rho <= 0.0) throw input_error("cesaro: rho must be positive");
    if (x.rows() != p.dim() || x.cols() != p.dim())
        throw input_error("cesaro: observable dimension mismatch");
    count_state_.assign(p.automaton().vertex_count(), 0);
    count_state_[p.automaton().origin()] = 1;
}

void CesaroEvaluator::advance_counts_to(int steps) {
    while (count_steps_ < steps) {
        std::vector<BigInt> next(count_state_.size(), 0);
        for (const Edge& e : p_->automaton().edges()) next[e.to] += count_state_[e.from];
        count_state_ = std::move(next);
        ++count_steps_;
    }
}

BigInt CesaroEvaluator::count_total_() const {
    BigInt t = 0;
    for (const BigInt& c : count_state_) t += c;
    return t;
}

void CesaroEvaluator::step() {
    ++n_;
    xi_ = p_->apply(xi_); // xi_ = P^n (lift x); origin read-out gives S_{n+1}
    const double weight = std::pow(rho_, -n_);
    weighted_sum_ += weight * p_->read_out_origin(xi_);
    advance_counts_to(n_ + 1);
    scalar_sum_ += weight * static_cast<double>(count_total_());
}

Observable CesaroEvaluator::average() const {
    if (n_ < 1) throw input_error("cesaro: average needs at least one step");
    return weighted_sum_ / static_cast<double>(n_);
}

double CesaroEvaluator::weight_scalar() const {
    if (n_ < 1) throw input_error("cesaro: c_N needs at least one step");
    return scalar_sum_ / static_cast<double>(n_);
}

Observable spherical_sum(const CoveringOperator& p, const Observable& x, int n) {
    return p.sphere_sum(x, n);
}

Observable normalized_spherical(const CoveringOperator& p, const Observable& x, int n) {
    const BigInt count = count_paths(p.automaton(), n);
    if (count == 0) throw input_error("normalized_spherical: empty sphere at n = " +
                                      std::to_string(n));
    return p.sphere_sum(x, n) / static_cast<double>(count);
}

Observable cesaro_average(const CoveringOperator& p, const Observable& x, double rho, int n) {
    if (n < 1) throw input_error("cesaro_average: N must be >= 1");
    CesaroEvaluator ev(p, x, rho);
    for (int i = 0; i < n; ++i) ev.step();
    return ev.average();
}

ConvergenceReport convergence_diagnostics(const CoveringOperator& p, const AlgebraState& s,
                                          const Observable& x, double rho, int n_max) {
    if (n_max < 8) throw input_error("convergence_diagnostics: N_max must be >= 8");
    ConvergenceReport rep;
    rep.ladder = {n_max / 8, n_max / 4, n_max / 2, n_max};

    std::vector<Observable> samples;
    CesaroEvaluator ev(p, x, rho);
    std::size_t next = 0;
    for (int n = 1; n <= n_max && next < rep.ladder.size(); ++n) {
        ev.step();
        if (n == rep.ladder[next]) {
            samples.push_back(ev.average());
            rep.c_values.push_back(ev.weight_scalar());
            ++next;
        }
    }
    rep.limit_estimate = samples.back();
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const Observable diff = samples[i] - samples[i + 1];
        rep.delta_gns.push_back(s.gns_norm2(diff));
        rep.delta_op.push_back(op_norm(diff));
    }
    // Deltas at rounding-noise level count as converged; the flag only
    // trips on growth above that floor.
    const double floor = 1e-12 * std::max(1.0, op_norm(rep.limit_estimate));
    for (std::size_t i = 0; i + 1 < rep.delta_gns.size(); ++i) {
        if (rep.delta_gns[i + 1] > std::max(rep.delta_gns[i], floor)) rep.cauchy = false;
        if (rep.delta_op[i + 1] > std::max(rep.delta_op[i], floor)) rep.cauchy = false;
    }
    return rep;
}

StateFunctionalReport state_functional_check(const CoveringOperator& p, const AlgebraState& s,
                                             const Observable& x, double rho, int n, double tol) {
    StateFunctionalReport rep;
    CesaroEvaluator ev(p, x, rho);
    for (int i = 0; i < n; ++i) ev.step();
    rep.phi_sn = s.value(ev.average());
    rep.c_n = ev.weight_scalar();
    rep.phi_x = s.value(x);
    rep.abs_error = std::abs(rep.phi_sn - rep.c_n * rep.phi_x);
    const double scale =
        std::max({std::abs(rep.c_n * rep.phi_x), rep.c_n * op_norm(x), 1e-300});
    rep.rel_error = rep.abs_error / scale;
    rep.ok = rep.rel_error <= tol;
    return rep;
}

MajorantReport majorant_bound(const CoveringOperator& p, const Observable& x, double rho,
                              int n_max) {
    if (!is_hermitian(x)) throw input_error("majorant_bound: x must be Hermitian");
    if (lambda_min_hermitian(x) < -1e-12 * std::max(1.0, op_norm(x)))
        throw input_error("majorant_bound: x must be positive semidefinite");
    MajorantReport rep;
    CesaroEvaluator ev(p, x, rho);
    std::vector<Observable> averages;
    for (int n = 1; n <= n_max; ++n) {
        ev.step();
        averages.push_back(ev.average());
        rep.lambda_max_per_n.push_back(lambda_max_hermitian(averages.back()));
        rep.c_star = std::max(rep.c_star, rep.lambda_max_per_n.back());
    }
    const CMat bound = rep.c_star * CMat::Identity(p.dim(), p.dim());
    for (const Observable& a : averages)
        if (!operator_order_leq(a, bound, 1e-10)) rep.majorant_ok = false;
    const double xnorm = op_norm(x);
    rep.ratio_to_norm = xnorm > 0.0 ? rep.c_star / xnorm : 0.0;
    return rep;
}

SquaresReport squares_check(const CoveringOperator& p, const Observable& x, double rho, int n_max,
                            int sigma_depth) {
    if (!is_hermitian(x)) throw input_error("squares_check: x must be Hermitian");
    if (lambda_min_hermitian(x) < -1e-12 * std::max(1.0, op_norm(x)))
        throw input_error("squares_check: x must be positive semidefinite");
    SquaresReport rep;
    const Observable x2 = x * x;

    // Kadison-Schwarz for the unital normalized spherical averages.
    rep.worst_schwarz_eigenvalue = 0.0;
    for (int n = 0; n <= sigma_depth; ++n) {
        const Observable sn = normalized_spherical(p, x, n);
        const Observable sn2 = normalized_spherical(p, x2, n);
        const double lmin = lambda_min_hermitian(sn2 - sn.adjoint() * sn);
        rep.worst_schwarz_eigenvalue = std::min(rep.worst_schwarz_eigenvalue, lmin);
        if (lmin < -1e-10) rep.schwarz_ok = false;
    }

    // Smallest kappa_N with s_N(x)^2 <= kappa_N s_N(x^2) + 1e-10 I.
    CesaroEvaluator ev_x(p, x, rho), ev_x2(p, x2, rho);
    for (int n = 1; n <= n_max; ++n) {
        ev_x.step();
        ev_x2.step();
        const Observable sq = ev_x.average() * ev_x.average();
        const Observable target = ev_x2.average();
        const Observable c = sq - 1e-10 * CMat::Identity(p.dim(), p.dim());

        Eigen::SelfAdjointEigenSolver<CMat> es(target);
        const double lmin = es.eigenvalues().minCoeff();
        double kappa;
        if (lmin <= 1e-13 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff())) {
            kappa = std::numeric_limits<double>::infinity();
        } else {
            const CMat isqrt =
                es.eigenvectors() *
                es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal().toDenseMatrix().cast<Complex>() *
                es.eigenvectors().adjoint();
            kappa = std::max(0.0, lambda_max_hermitian(isqrt * c * isqrt));
        }
        rep.kappa.push_back(kappa);
        rep.kappa_max = std::max(rep.kappa_max, kappa);
    }
    return rep;
}

} // namespace covmark
