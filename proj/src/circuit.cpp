#include "hqst/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace hqst::circuit {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void CircuitParams::validate() const {
    if (dimension < 1) throw std::invalid_argument("circuit dimension must be >= 1");
    if (junction_capacitance <= 0.0) throw std::invalid_argument("junction capacitance must be > 0");
    if (coupling_capacitance < 0.0) throw std::invalid_argument("coupling capacitance must be >= 0");
    if (critical_current <= 0.0) throw std::invalid_argument("critical current must be > 0");
    if (bias_currents.size() > 1 &&
        bias_currents.size() != (std::size_t{1} << dimension)) {
        throw std::invalid_argument("bias currents must be shared or one per node");
    }
    for (double ij : bias_currents) {
        if (ij < 0.0 || ij >= critical_current) {
            throw std::invalid_argument("bias current must satisfy 0 <= I_j < I_c");
        }
    }
    if (wire_inductance && *wire_inductance <= 0.0) {
        throw std::invalid_argument("wire inductance must be > 0");
    }
}

double CircuitParams::total_capacitance() const {
    return junction_capacitance + dimension * coupling_capacitance;
}

double CircuitParams::bias_current(int node) const {
    if (bias_currents.empty()) return 0.0;
    if (bias_currents.size() == 1) return bias_currents.front();
    return bias_currents.at(node);
}

double coupling_parameter(const CircuitParams& params) {
    params.validate();
    return params.coupling_capacitance / params.total_capacitance();
}

Eigen::MatrixXd capacitance_matrix(const CircuitParams& params, const Eigen::MatrixXd& adjacency) {
    params.validate();
    const double zeta = coupling_parameter(params);
    if (zeta * params.dimension >= 1.0) {
        throw std::domain_error("zeta * d >= 1: capacitance matrix not positive definite");
    }
    const double c = params.total_capacitance();
    const Eigen::Index n = adjacency.rows();
    return c * (Eigen::MatrixXd::Identity(n, n) - zeta * adjacency);
}

double qubit_frequency(double critical_current, double bias_current, double inv_cap_diag) {
    if (critical_current <= 0.0) throw std::invalid_argument("critical current must be > 0");
    if (inv_cap_diag <= 0.0) throw std::invalid_argument("(C^-1)_jj must be > 0");
    if (bias_current < 0.0 || bias_current >= critical_current) {
        throw std::domain_error("I_j >= I_c: junction switches, no bound state");
    }
    const double r = bias_current / critical_current;
    const double plasma = std::sqrt(kTwoPi * critical_current * inv_cap_diag / kFluxQuantum);
    return plasma * std::pow(1.0 - r * r, 0.25);
}

double inverse_capacitance_diagonal(const CircuitParams& params) {
    params.validate();
    const double zeta = coupling_parameter(params);
    const double c = params.total_capacitance();
    const int d = params.dimension;
    if (d <= 10) {
        const Eigen::Index n = Eigen::Index{1} << d;
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index x = 0; x < n; ++x)
            for (int j = 0; j < d; ++j) a(x, x ^ (Eigen::Index{1} << j)) = 1.0;
        const Eigen::MatrixXd cm = c * (Eigen::MatrixXd::Identity(n, n) - zeta * a);
        return cm.inverse()(0, 0);
    }
    // (C^-1)_00 = (1/C) sum_m zeta^m (A^m)_00.  (A^m)_00 counts closed m-walks
    // at a hypercube vertex; accumulate via the row-0 walk distribution over
    // Hamming rows, which is d+1 dimensional.
    // Scaled walk vector v_m(k) = zeta^m * (# m-walks from vertex 0 to row k);
    // stays bounded by (zeta d)^m, so no overflow for zeta d < 1.
    Eigen::VectorXd v = Eigen::VectorXd::Zero(d + 1);
    v(0) = 1.0;
    double sum = 1.0;
    double bound = 1.0;
    for (int m = 1; m <= 4000; ++m) {
        Eigen::VectorXd next = Eigen::VectorXd::Zero(d + 1);
        for (int k = 0; k <= d; ++k) {
            if (v(k) == 0.0) continue;
            if (k > 0) next(k - 1) += zeta * v(k) * k;
            if (k < d) next(k + 1) += zeta * v(k) * (d - k);
        }
        v = next;
        sum += v(0);
        bound *= zeta * d;
        if (bound < 1e-18) break;
    }
    return sum / c;
}

double bias_ratio_for_frequency(double target_frequency, double plasma_frequency) {
    if (plasma_frequency <= 0.0) throw std::invalid_argument("plasma frequency must be > 0");
    if (target_frequency <= 0.0 || target_frequency > plasma_frequency) {
        throw std::domain_error("target frequency must lie in (0, plasma frequency]");
    }
    const double q = target_frequency / plasma_frequency;
    return std::sqrt(1.0 - q * q * q * q);
}

CouplingMatrix coupling_matrix(const Eigen::VectorXd& omega, double zeta,
                               const Eigen::SparseMatrix<double, Eigen::RowMajor>& adjacency,
                               int order) {
    if (order < 1) throw std::invalid_argument("series truncation order must be >= 1");
    const Eigen::Index n = adjacency.rows();
    if (omega.size() != n) throw std::invalid_argument("frequency vector size mismatch");
    // Row sums of the hypercube adjacency equal d; zeta*d >= 1 diverges.
    double max_row = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) max_row = std::max(max_row, adjacency.row(i).sum());
    if (zeta * max_row >= 1.0) {
        throw std::domain_error("zeta * d >= 1: coupling series diverges");
    }

    using Sp = Eigen::SparseMatrix<double, Eigen::RowMajor>;
    Sp series = zeta * adjacency;
    Sp power = adjacency;
    double zp = zeta;
    for (int m = 2; m <= order; ++m) {
        power = (power * adjacency).pruned();
        zp *= zeta;
        series = (series + zp * power).pruned();
    }

    const Eigen::VectorXd sq = omega.cwiseSqrt();
    CouplingMatrix out;
    out.dimension = static_cast<int>(std::lround(adjacency.row(0).sum()));
    out.order = order;
    out.entries = series;
    for (Eigen::Index i = 0; i < out.entries.outerSize(); ++i) {
        for (Sp::InnerIterator it(out.entries, i); it; ++it) {
            it.valueRef() *= 0.5 * sq(it.row()) * sq(it.col());
        }
    }
    out.entries.makeCompressed();
    return out;
}

Eigen::MatrixXd coupling_matrix_exact_uniform(double omega0, double zeta,
                                              const Eigen::MatrixXd& adjacency) {
    const Eigen::Index n = adjacency.rows();
    const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - zeta * adjacency;
    return 0.5 * omega0 * (m.inverse() - Eigen::MatrixXd::Identity(n, n));
}

double lc_mode_frequency(double inductance, double coupling_capacitance) {
    if (inductance <= 0.0 || coupling_capacitance <= 0.0) {
        throw std::invalid_argument("inductance and capacitance must be > 0");
    }
    return 1.0 / std::sqrt(inductance * coupling_capacitance);
}

}  // namespace hqst::circuit
