#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace hqst::krylov {

struct LanczosOptions {
    int max_subspace = 220;
    double tolerance = 1e-13;  // residual estimate on the final column
};

/// Applies exp(-i H t) to a real unit-direction vector e_source, for real
/// symmetric sparse H.  Lanczos with full reorthogonalization; the small
/// tridiagonal exponential is formed by dense symmetric eigendecomposition.
Eigen::VectorXcd evolve_basis_vector(const Eigen::SparseMatrix<double, Eigen::RowMajor>& h,
                                     Eigen::Index source, double t,
                                     const LanczosOptions& opts = {});

/// Same, for an arbitrary real starting vector.
Eigen::VectorXcd evolve_vector(const Eigen::SparseMatrix<double, Eigen::RowMajor>& h,
                               const Eigen::VectorXd& v, double t,
                               const LanczosOptions& opts = {});

}  // namespace hqst::krylov
