#include "hqst/krylov.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace hqst::krylov {

namespace {

using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// exp(-i T t) e1 for the m x m symmetric tridiagonal with diagonal alpha and
// off-diagonal beta.
Eigen::VectorXcd tridiag_exp_e1(const std::vector<double>& alpha, const std::vector<double>& beta,
                                int m, double t) {
    Eigen::MatrixXd tm = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        tm(i, i) = alpha[i];
        if (i + 1 < m) tm(i, i + 1) = tm(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tm);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const Eigen::MatrixXd& u = es.eigenvectors();
    Eigen::VectorXcd phases(m);
    const std::complex<double> mi(0.0, -1.0);
    for (int i = 0; i < m; ++i) phases(i) = std::exp(mi * ev(i) * t);
    return u * (phases.asDiagonal() * u.row(0).transpose().cast<std::complex<double>>());
}

}  // namespace

Eigen::VectorXcd evolve_vector(const SpMat& h, const Eigen::VectorXd& v0, double t,
                               const LanczosOptions& opts) {
    const Eigen::Index n = h.rows();
    const double vnorm = v0.norm();
    if (vnorm == 0.0) throw std::invalid_argument("lanczos: zero starting vector");

    const int mmax = static_cast<int>(std::min<Eigen::Index>(opts.max_subspace, n));
    Eigen::MatrixXd basis(n, mmax);
    std::vector<double> alpha, beta;
    alpha.reserve(mmax);
    beta.reserve(mmax);

    basis.col(0) = v0 / vnorm;
    Eigen::VectorXd w(n);
    Eigen::VectorXcd small_prev;  // approximation from the previous check
    Eigen::VectorXcd small_final;
    int m = 0;
    bool converged = false;

    for (int j = 0; j < mmax; ++j) {
        w.noalias() = h * basis.col(j);
        if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
        double a = basis.col(j).dot(w);
        w -= a * basis.col(j);
        // Full reorthogonalization, twice for safety.
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i <= j; ++i) {
                const double c = basis.col(i).dot(w);
                w -= c * basis.col(i);
                if (i == j) a += c;
            }
        }
        alpha.push_back(a);
        const double b = w.norm();
        m = j + 1;

        if (b < 1e-14 * std::abs(a) + 1e-300) {
            converged = true;  // invariant subspace reached: result is exact
            break;
        }
        // Successive-approximation convergence check: the basis is
        // orthonormal, so the change of the propagated small vector between
        // checks bounds the recent progress of the approximation.
        if (m >= 4 && m % 2 == 0) {
            Eigen::VectorXcd small = tridiag_exp_e1(alpha, beta, m, t);
            if (small_prev.size() > 0) {
                double diff2 = 0.0;
                for (int i = 0; i < m; ++i) {
                    const std::complex<double> prev =
                        i < small_prev.size() ? small_prev(i) : std::complex<double>(0.0);
                    diff2 += std::norm(small(i) - prev);
                }
                if (std::sqrt(diff2) < opts.tolerance) {
                    converged = true;
                    small_final = small;
                    break;
                }
            }
            small_prev = std::move(small);
        }
        if (j + 1 < mmax) {
            beta.push_back(b);
            basis.col(j + 1) = w / b;
        }
    }

    Eigen::VectorXcd small =
        (converged && small_final.size() == m) ? small_final : tridiag_exp_e1(alpha, beta, m, t);
    Eigen::VectorXcd out = basis.leftCols(m) * (vnorm * small);
    if (std::abs(out.norm() - vnorm) > 1e-9 * vnorm) {
        throw std::runtime_error("lanczos propagation failed to conserve norm");
    }
    return out;
}

Eigen::VectorXcd evolve_basis_vector(const SpMat& h, Eigen::Index source, double t,
                                     const LanczosOptions& opts) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(h.rows());
    v(source) = 1.0;
    return evolve_vector(h, v, t, opts);
}

}  // namespace hqst::krylov
