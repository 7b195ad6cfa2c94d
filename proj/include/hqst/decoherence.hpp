#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "hqst/circuit.hpp"
#include "hqst/dynamics.hpp"
#include "hqst/ode.hpp"

namespace hqst::decoherence {

/// Energy-decay and pure-dephasing times (seconds); the total coherence time
/// follows as 1/T2 = 1/(2 T1) + 1/T_phi.
struct DecoherenceParams {
    double t1 = 0.0;
    double t_phi = 0.0;

    void validate() const;
    double t2() const { return 1.0 / (0.5 / t1 + 1.0 / t_phi); }
};

/// Density matrix on the basis {|0), |x)} at one instant; index 0 is the
/// shared ground state, index 1 + x the excitation at node x.
struct SubspaceDensityMatrix {
    double time = 0.0;
    Eigen::MatrixXcd rho;

    double ground_population() const { return rho(0, 0).real(); }
    std::complex<double> coherence(Eigen::Index x) const { return rho(0, 1 + x); }
    std::complex<double> node_element(Eigen::Index x, Eigen::Index y) const {
        return rho(1 + x, 1 + y);
    }
    double node_population(Eigen::Index x) const { return rho(1 + x, 1 + x).real(); }

    double trace_error() const { return std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag()); }
    double hermiticity_error() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }
    double min_eigenvalue() const;
};

struct MasterEquationResult {
    std::vector<SubspaceDensityMatrix> trajectory;
    ode::Stats stats;
};

/// Integrates the restricted master equation
///   d rho_00    =  (1/T1) sum_x rho_xx
///   d rho_0x    =  +i w_x rho_0x + i sum_y Omega_xy rho_0y - rho_0x / T2
///   d rho_x0    =  conjugate line
///   d rho_xy    =  -i [w + Omega, rho]_xy - (1/T1) delta_xy rho_xx
///                  - (2/T2)(1 - delta_xy) rho_xy
/// from rho(0) = |Psi_i><Psi_i| restricted to the subspace, reporting the
/// state at each requested time.  Internally the coherences are tracked in a
/// frame rotating at the mean frequency; outputs are in the lab frame.
MasterEquationResult integrate_master_equation(
    const Eigen::VectorXd& omega, const Eigen::SparseMatrix<double, Eigen::RowMajor>& coupling,
    const dynamics::TransferSpec& spec, const DecoherenceParams& dec,
    const std::vector<double>& t_grid, const ode::Options& opts = {});

// --- closed-form perturbative solutions (first-order uniform coupling) ---

/// rho_00(t) = 1 - |beta|^2 e^{-t/T1}.
double ground_population_closed(double t, std::complex<double> beta, double t1);

/// rho_0b(t) = alpha beta* e^{-t/T2} e^{+i omega0 t} (+i)^d [sin(zeta omega0 t/2)]^d.
std::complex<double> corner_coherence_closed(double t, int d, double zeta, double omega0,
                                             std::complex<double> alpha,
                                             std::complex<double> beta, double t2);

/// Dephasing decay constant of mode (p, n):
///   lambda_pn = (2/T_phi) (1 - 2^{n-d-2p} (d-n+2p)! / (p! (d-n+p)!)).
double dephasing_rate(int p, int n, int d, double t_phi);

/// Mode weight g_n(t) = sum_p d! (2 - delta_{n,d}) 2^{n-2d-2p}
///                      / (p! (n-2p)! (d-n+p)!) e^{-lambda_pn t}.
double dephasing_mode_weight(int n, double t, int d, double t_phi);

/// sum_{n=0}^{d} g_n(t); bounded below by e^{-2t/T_phi}.
double dephasing_mode_weight_sum(double t, int d, double t_phi);

/// rho_bb(t) = |beta|^2 e^{-t/T1} sum_n (-1)^{d-n} g_n(t) cos(zeta omega0 t (d-n)).
double target_population_closed(double t, int d, double zeta, double omega0,
                                std::complex<double> beta, const DecoherenceParams& dec);

/// State-transfer fidelity at T = pi/(zeta omega0) under decoherence:
///   F = |a|^2 - |a|^2|b|^2 e^{-T/T1} + 2 |a|^2|b|^2 e^{-T/T2}
///       + |b|^4 e^{-T/T1} sum_n g_n(T).
double transfer_fidelity_decoherent(std::complex<double> alpha, std::complex<double> beta, int d,
                                    double zeta, double omega0, const DecoherenceParams& dec);

/// Bloch-sphere average of the transfer fidelity:
///   F_avg = 1/2 - (1/6) e^{-T/T1} + (1/3) e^{-T/T2} + (1/3) e^{-T/T1} sum_n g_n(T).
double average_fidelity(int d, double zeta, double omega0, const DecoherenceParams& dec);

/// Network-size-independent lower bound on F_avg:
///   1/2 - (1/6) e^{-T/T1} + (1/3) e^{-T/T2} + (1/3) e^{-2T/T2}.
double fidelity_lower_bound(double transfer_time, double t1, double t2);

/// Transfer-time growth when the capacitors (not zeta, omega0) are held
/// fixed: T(d) = T(1) [1 + (d-1) zeta]^{3/2}, with zeta the d=1 coupling.
double transfer_time_fixed_capacitor(int d, double zeta, double t_at_d1);

}  // namespace hqst::decoherence
