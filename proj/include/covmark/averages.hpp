#pragma once

#include "covmark/covering.hpp"

namespace covmark {

/// Incremental evaluator of the Cesaro averages
///   s_N(x) = (1/N) sum_{n=1..N} rho^-n S_{n+1}(x),
/// where S_m is the spherical sum of radius m. One application of the
/// covering operator per step; s_N is available at every intermediate N.
class CesaroEvaluator {
public:
    CesaroEvaluator(const CoveringOperator& p, Observable x, double rho);

    int current_n() const { return n_; }
    void step();                     // advance n by one
    Observable average() const;      // s_n at the current n (n >= 1)
    double weight_scalar() const;    // c_n = (1/n) sum rho^-m N(m+1)

private:
    const CoveringOperator* p_;
    double rho_;
    int n_ = 0;
    CoveringElement xi_;       // P^n applied to the constant lift
    Observable weighted_sum_;  // sum_{m=1..n} rho^-m S_{m+1}(x)
    double scalar_sum_ = 0.0;  // sum_{m=1..n} rho^-m N(m+1)
    std::vector<BigInt> count_state_;
    int count_steps_ = 0;
    void advance_counts_to(int steps);
    BigInt count_total_() const;
};

Observable spherical_sum(const CoveringOperator& p, const Observable& x, int n);

/// N(n)^-1 sum over the sphere; unital by construction.
Observable normalized_spherical(const CoveringOperator& p, const Observable& x, int n);

Observable cesaro_average(const CoveringOperator& p, const Observable& x, double rho, int n);

struct ConvergenceReport {
    std::vector<int> ladder;          // N_max/8, N_max/4, N_max/2, N_max
    std::vector<double> delta_gns;    // consecutive ||s_N - s_N'||_2
    std::vector<double> delta_op;     // consecutive operator-norm deltas
    Observable limit_estimate;        // s_{N_max}
    std::vector<double> c_values;     // c_N along the ladder
    bool cauchy = true;               // deltas never increase along the ladder
};

ConvergenceReport convergence_diagnostics(const CoveringOperator& p, const AlgebraState& s,
                                          const Observable& x, double rho, int n_max);

struct StateFunctionalReport {
    Complex phi_sn;
    double c_n = 0.0;
    Complex phi_x;
    double abs_error = 0.0;
    double rel_error = 0.0;
    bool ok = true;
};

/// phi(s_N(x)) = c_N phi(x): the finite-dimensional shadow of state
/// invariance. Relative tolerance against the scale c_N max(|phi(x)|, ||x||).
StateFunctionalReport state_functional_check(const CoveringOperator& p, const AlgebraState& s,
                                             const Observable& x, double rho, int n,
                                             double tol = 1e-12);

struct MajorantReport {
    double c_star = 0.0;                  // max_N lambda_max(s_N(x))
    std::vector<double> lambda_max_per_n; // indexed from N = 1
    double ratio_to_norm = 0.0;           // c_star / ||x||
    bool majorant_ok = true;              // s_N(x) <= c_star I for all N
};

/// Concrete uniform majorant c* I for the averages of a positive observable.
MajorantReport majorant_bound(const CoveringOperator& p, const Observable& x, double rho,
                              int n_max);

struct SquaresReport {
    std::vector<double> kappa;  // smallest kappa_N with s_N(x)^2 <= kappa s_N(x^2) + tol I
    double kappa_max = 0.0;
    bool schwarz_ok = true;     // sigma_n(x)* sigma_n(x) <= sigma_n(x* x) for n <= sigma_depth
    double worst_schwarz_eigenvalue = 0.0;
};

SquaresReport squares_check(const CoveringOperator& p, const Observable& x, double rho, int n_max,
                            int sigma_depth = 6);

} // namespace covmark
