#pragma once

#include <complex>
#include <random>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace covmark {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;

inline double max_abs(const CMat& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double frobenius_norm(const CMat& m) { return m.norm(); }

inline bool is_hermitian(const CMat& m, double tol = 1e-12) {
    return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

/// Eigenvalues of a Hermitian matrix, ascending.
inline Eigen::VectorXd hermitian_eigenvalues(const CMat& m) {
    Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

inline double lambda_max_hermitian(const CMat& m) {
    return hermitian_eigenvalues(m).maxCoeff();
}

inline double lambda_min_hermitian(const CMat& m) {
    return hermitian_eigenvalues(m).minCoeff();
}

/// Operator norm (largest singular value).
inline double op_norm(const CMat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues()(0);
}

/// Haar-like random unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal absorbed, making the factor unique and seed-deterministic.
inline CMat haar_like_unitary(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat z(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            z(i, j) = Complex(re, im);
        }
    Eigen::HouseholderQR<CMat> qr(z);
    CMat q = qr.householderQ();
    CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        Complex diag = r(j, j);
        Complex phase = diag == Complex(0, 0) ? Complex(1, 0) : diag / std::abs(diag);
        q.col(j) *= phase;
    }
    return q;
}

/// Random Hermitian matrix with entries of unit scale.
inline CMat random_hermitian(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat z(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) z(i, j) = Complex(gauss(rng), gauss(rng));
    return 0.5 * (z + z.adjoint().eval());
}

} // namespace covmark
