#pragma once

#include <complex>
#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "hqst/circuit.hpp"
#include "hqst/topology.hpp"

namespace hqst::dynamics {

/// Transfer time of the ideal protocol, T = pi / (zeta omega0).
double transfer_time(double zeta, double omega0);

/// Closed-form corner-to-corner amplitude of the first-order uniform model:
///   f_b(t) = e^{i phi} e^{-i omega0 t} (-i)^d [sin(zeta omega0 t / 2)]^d,
/// with the global phase phi = (1/2) sum_j omega_j t = 2^(d-1) omega0 t.
std::complex<double> corner_amplitude(int d, double zeta, double omega0, double t);

/// Per-node frequencies of the quadratic row correction: node x in row k
/// gets omega0 (1 + 4 zeta^2 (k - d/2)^2), cancelling the leading curvature
/// of the coupled spectrum.
Eigen::VectorXd corrected_frequencies(int d, double omega0, double zeta);

/// Same correction resolved per row k = 0..d.
Eigen::VectorXd corrected_row_frequencies(int d, double omega0, double zeta);

/// Perturbative transfer-error models (beta = 1, corner to corner):
///   uncorrected: pi^2 d^2 zeta^2 / 2
///   corrected:   3 pi^2 d^3 zeta^4 / 8 + pi^2 d^6 zeta^6 / 8
double predicted_transfer_error(int d, double zeta, bool corrected);

/// Effective Hamiltonian hbar(omega + Omega) divided by hbar, i.e. the
/// angular-frequency matrix that generates the single-excitation dynamics.
/// Either on the 2^d node basis or on the (d+1)-row symmetric basis.
class EffectiveHamiltonian {
public:
    enum class Basis { NodeSpace, ColumnSpace };

    static EffectiveHamiltonian node_space(int d, const Eigen::VectorXd& omega,
                                           const circuit::CouplingMatrix& coupling, double omega0,
                                           double zeta);

    /// Symmetric-subspace reduction for row-constant frequencies.  The
    /// coupling keeps the sqrt(w_k w_k') symmetrization of the node-space
    /// construction so the two bases evolve identically; with uniform
    /// frequencies it reduces to omega0 sum_m 2^(m-1) zeta^m Jx^m.
    static EffectiveHamiltonian column_space(int d, double zeta,
                                             const Eigen::VectorXd& row_frequencies, int order,
                                             double omega0);

    Basis basis() const { return basis_; }
    int hypercube_dimension() const { return d_; }
    Eigen::Index size() const { return omega_.size(); }
    double omega0() const { return omega0_; }
    double zeta() const { return zeta_; }
    const Eigen::VectorXd& omega_diagonal() const { return omega_; }
    const Eigen::SparseMatrix<double, Eigen::RowMajor>& coupling() const { return coupling_; }

    /// Sum of omega_j over all 2^d network nodes (enters the global phase).
    double omega_node_sum() const { return omega_node_sum_; }

    /// Dense omega + Omega.
    Eigen::MatrixXd dense() const;

private:
    EffectiveHamiltonian() = default;
    Basis basis_ = Basis::NodeSpace;
    int d_ = 0;
    double omega0_ = 0.0;
    double zeta_ = 0.0;
    double omega_node_sum_ = 0.0;
    Eigen::VectorXd omega_;
    Eigen::SparseMatrix<double, Eigen::RowMajor> coupling_;
};

/// Angular-momentum ladder matrix Jx of spin d/2 on the row basis,
/// (Jx)_{k,k+1} = sqrt((k+1)(d-k))/2; the hypercube adjacency restricted to
/// the symmetric subspace equals 2 Jx.
Eigen::MatrixXd jx_matrix(int d);

enum class PropagationMethod { Auto, DenseEigen, Krylov };

/// Evolves a basis state under exp(-i (omega + Omega) t).  Construct once
/// and reuse across times; the dense path factorizes on first use.
class Propagator {
public:
    explicit Propagator(const EffectiveHamiltonian& h,
                        PropagationMethod method = PropagationMethod::Auto);

    /// Amplitude vector including the global phase e^{i phi},
    /// phi = (1/2) sum_nodes omega_j t.
    Eigen::VectorXcd amplitudes(Eigen::Index source, double t) const;

    /// Matrix element (exp(-i (omega+Omega) t))_{target,source}, without the
    /// global phase.
    std::complex<double> matrix_element(Eigen::Index target, Eigen::Index source, double t) const;

    double global_phase(double t) const;

private:
    const EffectiveHamiltonian* h_;
    PropagationMethod method_;
    std::shared_ptr<Eigen::SparseMatrix<double, Eigen::RowMajor>> full_;
    mutable std::shared_ptr<Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>> eig_;
    void ensure_factorized() const;
};

/// Threshold below which the auto method uses a dense factorization.
inline constexpr Eigen::Index kDensePropagationLimit = 600;

struct PropagationResult {
    Eigen::VectorXcd amplitudes;  // f_x(t), global phase included
    double global_phase = 0.0;    // phi
};

PropagationResult propagate(const EffectiveHamiltonian& h, const topology::NodeLabel& source,
                            double t, PropagationMethod method = PropagationMethod::Auto);

/// Input qubit state alpha|0> + beta|1> loaded at node a, addressed to b.
struct TransferSpec {
    topology::NodeLabel a;
    topology::NodeLabel b;
    std::complex<double> alpha;
    std::complex<double> beta;

    TransferSpec(topology::NodeLabel source, topology::NodeLabel target,
                 std::complex<double> alpha_in, std::complex<double> beta_in);
};

struct TransferResult {
    std::complex<double> amplitude;  // f_b(t)
    double fidelity = 0.0;
    double transfer_time = 0.0;  // protocol time T = pi/(zeta omega0)
    double global_phase = 0.0;   // phi at the evaluated t
    double evaluated_at = 0.0;   // the t the fidelity refers to
};

/// Fidelity against the protocol target alpha|0> + (-i)^h e^{-i omega0 T} beta|b>
/// with h the Hamming distance a->b and T the nominal transfer time.
TransferResult transfer_fidelity(const EffectiveHamiltonian& h, const TransferSpec& spec, double t,
                                 PropagationMethod method = PropagationMethod::Auto);

/// Transfer evaluated at the calibrated time: |f_b| is maximized over
/// t in [(1-window) T, (1+window) T].  This is the experimentally calibrated
/// protocol; the frequency renormalization induced by the correction scheme
/// shifts the revival away from the nominal T by O(zeta^2 d^2).
TransferResult calibrated_transfer_fidelity(const EffectiveHamiltonian& h,
                                            const TransferSpec& spec, double window = 0.15,
                                            PropagationMethod method = PropagationMethod::Auto);

/// One point of the error-scaling study (Fig.-2 style): corner-to-corner
/// error 1-F for a d-dimensional hypercube with order-`order` couplings,
/// uncorrected or row-corrected, computed on the (d+1)-dimensional column
/// space.  `calibrated` selects the calibrated-time protocol.
double column_space_transfer_error(int d, double zeta, double omega0, int order, bool corrected,
                                   bool calibrated = true);

/// Per-node frequency program that makes one or more disjoint subcubes
/// resonant while detuning every other node.
struct SubcubeProgram {
    Eigen::VectorXd frequencies;        // per node, rad/s
    std::vector<double> base_frequency; // per programmed subcube
    std::vector<double> transfer_time;  // per programmed subcube
    std::vector<topology::Subcube> subcubes;
};

inline constexpr double kDefaultDetuningFactor = 20.0;

/// Programs the subcube spanned by (a, b): members resonate at omega0 (with
/// optional row correction); every node outside is detuned so that each edge
/// leaving the subcube has |omega_j - omega_k| > detuning_factor zeta omega0.
SubcubeProgram program_subcube(int d, const topology::NodeLabel& a, const topology::NodeLabel& b,
                               double omega0, double zeta,
                               double detuning_factor = kDefaultDetuningFactor,
                               bool row_corrected = false);

/// Multi-subcube variant for parallel transfers; subcubes must be disjoint.
SubcubeProgram program_subcubes(int d,
                                const std::vector<std::pair<topology::NodeLabel,
                                                            topology::NodeLabel>>& corners,
                                double omega0, double zeta,
                                double detuning_factor = kDefaultDetuningFactor,
                                bool row_corrected = false);

/// Smallest frequency gap across edges that leave a programmed subcube,
/// in units of zeta omega0 (diagnostic for the programming margin).
double min_leaving_edge_margin(const SubcubeProgram& program, int d, std::size_t which = 0);

}  // namespace hqst::dynamics
