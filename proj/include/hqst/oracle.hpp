#pragma once

#include <complex>

#include <Eigen/Dense>

#include "hqst/dynamics.hpp"

namespace hqst::oracle {

/// Validation caps: a d-dimensional hypercube carries 2^d qubits, so the
/// full state space has dimension 2^(2^d); d = 3 gives 256.
inline constexpr int kMaxOracleDimension = 3;

/// Two-level-qubit network Hamiltonian on the full 2^N space (N = 2^d):
///   H = -(1/2) sum_j (omega_j + Omega_jj) Z_j
///       + (1/2) sum_{j<k} Omega_jk (X_j X_k + Y_j Y_k),
/// in angular-frequency units.  The series diagonal Omega_jj renormalizes
/// the qubit frequencies, matching the subspace convention where the full
/// coupling matrix (diagonal included) enters omega + Omega.
Eigen::MatrixXd full_hamiltonian(int d, const Eigen::VectorXd& omega,
                                 const Eigen::MatrixXd& coupling);

/// Total excitation number operator sum_j (1 - Z_j)/2 (diagonal).
Eigen::VectorXd excitation_number_diagonal(int d);

/// Single-excitation block of a full-space matrix, ordered by node label.
Eigen::MatrixXd single_excitation_block(int d, const Eigen::MatrixXd& full);

/// Fidelity of state transfer evolved in the full space: the product state
/// (alpha|0> + beta|1>)_a (x) |0...0> evolves under `full_hamiltonian` for
/// time t and is projected on alpha|0> + (-i)^h e^{-i omega0 T} beta|1_b>,
/// h the Hamming distance a -> b and T = pi/(zeta omega0).
double transfer_fidelity(int d, const Eigen::VectorXd& omega, const Eigen::MatrixXd& coupling,
                         const dynamics::TransferSpec& spec, double omega0, double zeta, double t);

/// Variance of the excitation number in the evolved state, computed in the
/// cancellation-free two-pass form.  For a single-excitation initial state
/// (beta = 1) the exact value is zero; any residue measures leakage between
/// number sectors.
double excitation_variance(int d, const Eigen::VectorXd& omega, const Eigen::MatrixXd& coupling,
                           const dynamics::TransferSpec& spec, double t);

/// <H> along the evolution relative to t = 0 (relative drift).
double energy_drift(int d, const Eigen::VectorXd& omega, const Eigen::MatrixXd& coupling,
                    const dynamics::TransferSpec& spec, double t);

}  // namespace hqst::oracle
