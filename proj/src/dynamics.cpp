#include "hqst/dynamics.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "hqst/krylov.hpp"

namespace hqst::dynamics {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};

// Compensated summation; the node-frequency sum enters the global phase
// multiplied by t, so plain accumulation over 2^d terms is not accurate
// enough for the 1e-9 amplitude contracts.
double kahan_sum(const Eigen::VectorXd& v) {
    double sum = 0.0, comp = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double y = v(i) - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return sum;
}

std::complex<double> minus_i_pow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}
}  // namespace

double transfer_time(double zeta, double omega0) {
    if (zeta <= 0.0 || omega0 <= 0.0) throw std::invalid_argument("zeta and omega0 must be > 0");
    return std::numbers::pi / (zeta * omega0);
}

std::complex<double> corner_amplitude(int d, double zeta, double omega0, double t) {
    const double phi = 0.5 * std::ldexp(omega0 * t, d);  // 2^(d-1) omega0 t
    const double s = std::sin(0.5 * zeta * omega0 * t);
    return std::exp(kI * phi) * std::exp(-kI * omega0 * t) * minus_i_pow(d) * std::pow(s, d);
}

Eigen::VectorXd corrected_row_frequencies(int d, double omega0, double zeta) {
    Eigen::VectorXd w(d + 1);
    for (int k = 0; k <= d; ++k) {
        const double x = k - 0.5 * d;
        w(k) = omega0 * (1.0 + 4.0 * zeta * zeta * x * x);
    }
    return w;
}

Eigen::VectorXd corrected_frequencies(int d, double omega0, double zeta) {
    const Eigen::Index n = Eigen::Index{1} << d;
    const Eigen::VectorXd rows = corrected_row_frequencies(d, omega0, zeta);
    Eigen::VectorXd w(n);
    for (Eigen::Index x = 0; x < n; ++x) {
        w(x) = rows(std::popcount(static_cast<std::uint64_t>(x)));
    }
    return w;
}

double predicted_transfer_error(int d, double zeta, bool corrected) {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double dd = d;
    if (!corrected) return 0.5 * pi2 * dd * dd * zeta * zeta;
    const double z4 = zeta * zeta * zeta * zeta;
    return 3.0 * pi2 * dd * dd * dd * z4 / 8.0 + pi2 * std::pow(dd, 6) * z4 * zeta * zeta / 8.0;
}

Eigen::MatrixXd jx_matrix(int d) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(d + 1, d + 1);
    for (int k = 0; k < d; ++k) {
        j(k, k + 1) = j(k + 1, k) = 0.5 * std::sqrt(double(k + 1) * double(d - k));
    }
    return j;
}

EffectiveHamiltonian EffectiveHamiltonian::node_space(int d, const Eigen::VectorXd& omega,
                                                      const circuit::CouplingMatrix& coupling,
                                                      double omega0, double zeta) {
    const Eigen::Index n = Eigen::Index{1} << d;
    if (omega.size() != n) throw std::invalid_argument("omega vector must have 2^d entries");
    if (coupling.entries.rows() != n) throw std::invalid_argument("coupling size mismatch");
    EffectiveHamiltonian h;
    h.basis_ = Basis::NodeSpace;
    h.d_ = d;
    h.omega0_ = omega0;
    h.zeta_ = zeta;
    h.omega_ = omega;
    h.omega_node_sum_ = kahan_sum(omega);
    h.coupling_ = coupling.entries;
    return h;
}

EffectiveHamiltonian EffectiveHamiltonian::column_space(int d, double zeta,
                                                        const Eigen::VectorXd& row_frequencies,
                                                        int order, double omega0) {
    if (row_frequencies.size() != d + 1) {
        throw std::invalid_argument("row frequencies must have d+1 entries");
    }
    if (order < 1) throw std::invalid_argument("series order must be >= 1");
    const Eigen::MatrixXd a = 2.0 * jx_matrix(d);  // adjacency on the row basis
    Eigen::MatrixXd series = Eigen::MatrixXd::Zero(d + 1, d + 1);
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(d + 1, d + 1);
    double zp = 1.0;
    for (int m = 1; m <= order; ++m) {
        power = power * a;
        zp *= zeta;
        series += zp * power;
    }
    const Eigen::VectorXd sq = row_frequencies.cwiseSqrt();
    Eigen::MatrixXd coupling = 0.5 * (sq * sq.transpose()).cwiseProduct(series);

    EffectiveHamiltonian h;
    h.basis_ = Basis::ColumnSpace;
    h.d_ = d;
    h.omega0_ = omega0;
    h.zeta_ = zeta;
    h.omega_ = row_frequencies;
    Eigen::VectorXd weighted(d + 1);
    double binom = 1.0;  // C(d, 0)
    for (int k = 0; k <= d; ++k) {
        weighted(k) = binom * row_frequencies(k);
        binom = binom * (d - k) / (k + 1);
    }
    h.omega_node_sum_ = kahan_sum(weighted);
    h.coupling_ = coupling.sparseView(1.0, 0.0);
    return h;
}

Eigen::MatrixXd EffectiveHamiltonian::dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd(coupling_);
    m.diagonal() += omega_;
    return m;
}

Propagator::Propagator(const EffectiveHamiltonian& h, PropagationMethod method)
    : h_(&h), method_(method) {
    if (method_ == PropagationMethod::Auto) {
        method_ = h.size() <= kDensePropagationLimit ? PropagationMethod::DenseEigen
                                                     : PropagationMethod::Krylov;
    }
    if (method_ == PropagationMethod::Krylov) {
        Eigen::SparseMatrix<double, Eigen::RowMajor> m = h.coupling();
        Eigen::SparseMatrix<double, Eigen::RowMajor> diag(m.rows(), m.cols());
        diag.reserve(Eigen::VectorXi::Constant(m.rows(), 1));
        for (Eigen::Index i = 0; i < m.rows(); ++i) diag.insert(i, i) = h.omega_diagonal()(i);
        full_ = std::make_shared<Eigen::SparseMatrix<double, Eigen::RowMajor>>(m + diag);
        full_->makeCompressed();
    }
}

void Propagator::ensure_factorized() const {
    if (!eig_) {
        eig_ = std::make_shared<Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>>(h_->dense());
        if (eig_->info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    }
}

double Propagator::global_phase(double t) const { return 0.5 * h_->omega_node_sum() * t; }

Eigen::VectorXcd Propagator::amplitudes(Eigen::Index source, double t) const {
    if (t < 0.0) throw std::invalid_argument("propagation time must be >= 0");
    Eigen::VectorXcd f;
    if (method_ == PropagationMethod::DenseEigen) {
        ensure_factorized();
        const Eigen::VectorXd& ev = eig_->eigenvalues();
        const Eigen::MatrixXd& u = eig_->eigenvectors();
        Eigen::VectorXcd phases(ev.size());
        for (Eigen::Index i = 0; i < ev.size(); ++i) phases(i) = std::exp(-kI * ev(i) * t);
        f = u * (phases.asDiagonal() * u.row(source).transpose().cast<std::complex<double>>());
    } else {
        f = krylov::evolve_basis_vector(*full_, source, t);
    }
    return std::exp(kI * global_phase(t)) * f;
}

std::complex<double> Propagator::matrix_element(Eigen::Index target, Eigen::Index source,
                                                double t) const {
    if (method_ == PropagationMethod::DenseEigen) {
        ensure_factorized();
        const Eigen::VectorXd& ev = eig_->eigenvalues();
        const Eigen::MatrixXd& u = eig_->eigenvectors();
        std::complex<double> acc = 0.0;
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            acc += u(target, i) * u(source, i) * std::exp(-kI * ev(i) * t);
        }
        return acc;
    }
    const Eigen::VectorXcd f = amplitudes(source, t);
    return f(target) * std::exp(-kI * global_phase(t));
}

PropagationResult propagate(const EffectiveHamiltonian& h, const topology::NodeLabel& source,
                            double t, PropagationMethod method) {
    Eigen::Index idx = source.value();
    if (h.basis() == EffectiveHamiltonian::Basis::ColumnSpace) {
        idx = source.hamming_row();
    }
    Propagator prop(h, method);
    PropagationResult out;
    out.amplitudes = prop.amplitudes(idx, t);
    out.global_phase = prop.global_phase(t);
    return out;
}

TransferSpec::TransferSpec(topology::NodeLabel source, topology::NodeLabel target,
                           std::complex<double> alpha_in, std::complex<double> beta_in)
    : a(source), b(target), alpha(alpha_in), beta(beta_in) {
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("transfer endpoints have different dimensions");
    }
    const double norm = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm - 1.0) > 1e-9) {
        throw std::invalid_argument("transfer state must satisfy |alpha|^2 + |beta|^2 = 1");
    }
}

namespace {

TransferResult fidelity_at(const Propagator& prop, const EffectiveHamiltonian& h,
                           const TransferSpec& spec, double t) {
    const int hd = topology::hamming_distance(spec.a, spec.b);
    const double T = transfer_time(h.zeta(), h.omega0());

    Eigen::Index src = spec.a.value(), dst = spec.b.value();
    if (h.basis() == EffectiveHamiltonian::Basis::ColumnSpace) {
        src = 0;
        dst = hd;
        if (spec.a.hamming_row() != 0) {
            throw std::invalid_argument("column-space transfer requires the source corner 0...0");
        }
    }

    const std::complex<double> u_ba = prop.matrix_element(dst, src, t);
    const std::complex<double> target_phase =
        minus_i_pow(hd) * std::exp(-kI * h.omega0() * T);
    // F = |<Psi_f|Psi(t)>|^2 with both components carrying e^{i phi}.
    const std::complex<double> overlap =
        std::norm(spec.alpha) + std::conj(target_phase) * std::norm(spec.beta) * u_ba;

    TransferResult out;
    out.amplitude = std::exp(kI * prop.global_phase(t)) * u_ba;
    out.fidelity = std::norm(overlap);
    out.transfer_time = T;
    out.global_phase = prop.global_phase(t);
    out.evaluated_at = t;
    return out;
}

}  // namespace

TransferResult transfer_fidelity(const EffectiveHamiltonian& h, const TransferSpec& spec, double t,
                                 PropagationMethod method) {
    Propagator prop(h, method);
    return fidelity_at(prop, h, spec, t);
}

TransferResult calibrated_transfer_fidelity(const EffectiveHamiltonian& h,
                                            const TransferSpec& spec, double window,
                                            PropagationMethod method) {
    Propagator prop(h, method);
    const double T = transfer_time(h.zeta(), h.omega0());

    auto fid = [&](double t) { return fidelity_at(prop, h, spec, t).fidelity; };

    // Coarse scan, then golden-section refinement of the revival peak.
    const int coarse = 240;
    double best_t = T, best_f = -1.0;
    for (int i = 0; i <= coarse; ++i) {
        const double t = T * (1.0 - window + 2.0 * window * i / coarse);
        const double f = fid(t);
        if (f > best_f) {
            best_f = f;
            best_t = t;
        }
    }
    const double step = T * 2.0 * window / coarse;
    double lo = best_t - step, hi = best_t + step;
    constexpr double kGolden = 0.381966011250105;
    for (int it = 0; it < 90; ++it) {
        const double m1 = lo + kGolden * (hi - lo);
        const double m2 = hi - kGolden * (hi - lo);
        if (fid(m1) > fid(m2)) hi = m2;
        else lo = m1;
    }
    return fidelity_at(prop, h, spec, 0.5 * (lo + hi));
}

double column_space_transfer_error(int d, double zeta, double omega0, int order, bool corrected,
                                   bool calibrated) {
    const Eigen::VectorXd rows = corrected
                                     ? corrected_row_frequencies(d, omega0, zeta)
                                     : Eigen::VectorXd::Constant(d + 1, omega0);
    const EffectiveHamiltonian h =
        EffectiveHamiltonian::column_space(d, zeta, rows, order, omega0);
    const topology::NodeLabel a(d, 0);
    const topology::NodeLabel b(d, (std::uint32_t{1} << d) - 1);
    const TransferSpec spec(a, b, 0.0, 1.0);
    const TransferResult r = calibrated
                                 ? calibrated_transfer_fidelity(h, spec)
                                 : transfer_fidelity(h, spec, transfer_time(zeta, omega0));
    return 1.0 - r.fidelity;
}

namespace {

// Outside nodes sit on a ladder of (row + 1.5) u above omega0 with
// u = detuning_factor * zeta * omega0; every hypercube edge changes the row
// by one, so non-programmed edges are split by at least u while edges leaving
// a programmed subcube are split by at least 1.5 u.  Parallel subcubes are
// staggered downward by 1.5 u per subcube.
SubcubeProgram build_program(int d,
                             const std::vector<std::pair<topology::NodeLabel,
                                                         topology::NodeLabel>>& corners,
                             double omega0, double zeta, double detuning_factor,
                             bool row_corrected) {
    if (detuning_factor <= 1.0) throw std::invalid_argument("detuning factor must exceed 1");
    const Eigen::Index n = Eigen::Index{1} << d;
    const double u = detuning_factor * zeta * omega0;

    SubcubeProgram out;
    out.frequencies.resize(n);
    std::vector<signed char> owner(n, -1);

    for (std::size_t s = 0; s < corners.size(); ++s) {
        const auto& [a, b] = corners[s];
        if (a.dimension() != d || b.dimension() != d) {
            throw std::invalid_argument("subcube corners must match the network dimension");
        }
        topology::Subcube cube(a, b);
        const double base = omega0 - 1.5 * u * static_cast<double>(s);
        for (const auto& node : cube.nodes()) {
            if (owner[node.value()] != -1) {
                throw std::invalid_argument("programmed subcubes must be disjoint");
            }
            owner[node.value()] = static_cast<signed char>(s);
            double w = base;
            if (row_corrected && cube.dimension() > 0) {
                const double x = cube.row_within(node) - 0.5 * cube.dimension();
                w = base * (1.0 + 4.0 * zeta * zeta * x * x);
            }
            out.frequencies(node.value()) = w;
        }
        out.base_frequency.push_back(base);
        out.transfer_time.push_back(transfer_time(zeta, base));
        out.subcubes.push_back(std::move(cube));
    }

    for (Eigen::Index x = 0; x < n; ++x) {
        if (owner[x] != -1) continue;
        const int row = std::popcount(static_cast<std::uint64_t>(x));
        out.frequencies(x) = omega0 * (1.0 + detuning_factor * zeta * (row + 1.5));
    }
    return out;
}

}  // namespace

SubcubeProgram program_subcube(int d, const topology::NodeLabel& a, const topology::NodeLabel& b,
                               double omega0, double zeta, double detuning_factor,
                               bool row_corrected) {
    return build_program(d, {{a, b}}, omega0, zeta, detuning_factor, row_corrected);
}

SubcubeProgram program_subcubes(int d,
                                const std::vector<std::pair<topology::NodeLabel,
                                                            topology::NodeLabel>>& corners,
                                double omega0, double zeta, double detuning_factor,
                                bool row_corrected) {
    return build_program(d, corners, omega0, zeta, detuning_factor, row_corrected);
}

double min_leaving_edge_margin(const SubcubeProgram& program, int d, std::size_t which) {
    const auto& cube = program.subcubes.at(which);
    double min_gap = std::numeric_limits<double>::infinity();
    for (const auto& node : cube.nodes()) {
        for (int j = 1; j <= d; ++j) {
            const auto nb = node.flipped(j);
            if (cube.contains(nb)) continue;
            min_gap = std::min(min_gap,
                               std::abs(program.frequencies(node.value()) -
                                        program.frequencies(nb.value())));
        }
    }
    return min_gap;
}

}  // namespace hqst::dynamics
