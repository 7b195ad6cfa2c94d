#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace hqst::circuit {

/// Flux quantum h/(2e) in webers.
inline constexpr double kFluxQuantum = 2.067833848e-15;

/// Physical parameters of the coupled-junction network.  Capacitances in
/// farads, currents in amperes, inductance in henries.
struct CircuitParams {
    double junction_capacitance = 0.0;   // C_x, intrinsic per junction
    double coupling_capacitance = 0.0;   // C_c, per coupler
    double critical_current = 0.0;       // I_c, common to all junctions
    std::vector<double> bias_currents;   // I_j, one per node (or single shared value)
    std::optional<double> wire_inductance;  // L, optional design-margin input
    int dimension = 0;                   // hypercube dimension d

    void validate() const;

    /// Total capacitance per junction, C = C_x + d C_c.
    double total_capacitance() const;

    /// Bias current of node j (shared value broadcast if only one given).
    double bias_current(int node) const;
};

/// Dimensionless coupling parameter zeta = C_c / (C_x + d C_c).
double coupling_parameter(const CircuitParams& params);

/// Capacitance matrix C_jk = C (delta_jk - zeta A_jk) in farads.  Requires
/// zeta * d < 1, where it is symmetric positive definite.
Eigen::MatrixXd capacitance_matrix(const CircuitParams& params, const Eigen::MatrixXd& adjacency);

/// Junction plasma/transition frequency in rad/s:
///   omega = sqrt(2 pi I_c (C^-1)_jj / Phi0) * (1 - (I_j/I_c)^2)^(1/4).
/// Throws if the junction has no bound state (I_j >= I_c).
double qubit_frequency(double critical_current, double bias_current, double inv_cap_diag);

/// Diagonal (C^-1)_jj of the inverse capacitance matrix.  By hypercube
/// symmetry it is the same for every node; computed by exact inversion for
/// d <= 10 and by the Neumann series of the symmetric value otherwise.
double inverse_capacitance_diagonal(const CircuitParams& params);

/// Bias current ratio I_j/I_c that tunes a junction with zero-bias frequency
/// `plasma_frequency` down to `target_frequency` (both rad/s).
double bias_ratio_for_frequency(double target_frequency, double plasma_frequency);

/// Symmetric coupling matrix in rad/s, truncated at `order` in zeta:
///   Omega_jk = (1/2) sqrt(omega_j omega_k) (zeta A + zeta^2 A^2 + ...)_jk.
/// Sparse row-major storage; the series diagonal (even powers of A) is kept.
struct CouplingMatrix {
    int dimension = 0;  // hypercube dimension d
    int order = 0;      // series truncation order in zeta
    Eigen::SparseMatrix<double, Eigen::RowMajor> entries;

    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(entries); }
};

inline constexpr int kDefaultCouplingOrder = 3;

CouplingMatrix coupling_matrix(const Eigen::VectorXd& omega, double zeta,
                               const Eigen::SparseMatrix<double, Eigen::RowMajor>& adjacency,
                               int order = kDefaultCouplingOrder);

/// Exact resummation of the series for uniform frequency omega0:
///   (omega0/2) [ (1 - zeta A)^-1 - 1 ].  Dense; intended for small d checks.
Eigen::MatrixXd coupling_matrix_exact_uniform(double omega0, double zeta,
                                              const Eigen::MatrixXd& adjacency);

/// Resonant mode of a coupling wire with inductance L: omega_LC = 1/sqrt(L C_c).
double lc_mode_frequency(double inductance, double coupling_capacitance);

}  // namespace hqst::circuit
