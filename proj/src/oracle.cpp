#include "hqst/oracle.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace hqst::oracle {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void check_dim(int d) {
    if (d < 1 || d > kMaxOracleDimension) {
        throw std::invalid_argument("full-space oracle supports d <= 3 only");
    }
}

std::complex<double> minus_i_pow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

// y = m x for real m, complex x.
Eigen::VectorXcd apply_real(const Eigen::MatrixXd& m, const Eigen::VectorXcd& x) {
    const Eigen::VectorXd re = m * x.real();
    const Eigen::VectorXd im = m * x.imag();
    return re.cast<std::complex<double>>() + kI * im.cast<std::complex<double>>();
}

Eigen::VectorXcd evolve(const Eigen::MatrixXd& h, const Eigen::VectorXcd& psi, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const Eigen::MatrixXd& u = es.eigenvectors();
    Eigen::VectorXcd coeff = apply_real(u.transpose(), psi);
    for (Eigen::Index i = 0; i < ev.size(); ++i) coeff(i) *= std::exp(-kI * ev(i) * t);
    return apply_real(u, coeff);
}

}  // namespace

Eigen::MatrixXd full_hamiltonian(int d, const Eigen::VectorXd& omega,
                                 const Eigen::MatrixXd& coupling) {
    check_dim(d);
    const int nq = 1 << d;          // qubits, one per node
    const Eigen::Index dim = Eigen::Index{1} << nq;
    if (omega.size() != nq || coupling.rows() != nq) {
        throw std::invalid_argument("oracle inputs must have one entry per node");
    }

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
        double diag = 0.0;
        for (int j = 0; j < nq; ++j) {
            const double sign = (s >> j) & 1 ? -1.0 : 1.0;
            diag -= 0.5 * (omega(j) + coupling(j, j)) * sign;
        }
        h(s, s) = diag;
        for (int j = 0; j < nq; ++j) {
            if (!((s >> j) & 1)) continue;
            for (int k = 0; k < nq; ++k) {
                if (k == j || ((s >> k) & 1)) continue;
                // (XX + YY)/2 hops the excitation j -> k.
                const Eigen::Index s2 = s ^ (Eigen::Index{1} << j) ^ (Eigen::Index{1} << k);
                h(s2, s) += coupling(j, k);
            }
        }
    }
    return h;
}

Eigen::VectorXd excitation_number_diagonal(int d) {
    check_dim(d);
    const int nq = 1 << d;
    const Eigen::Index dim = Eigen::Index{1} << nq;
    Eigen::VectorXd num(dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
        num(s) = std::popcount(static_cast<std::uint64_t>(s));
    }
    return num;
}

Eigen::MatrixXd single_excitation_block(int d, const Eigen::MatrixXd& full) {
    check_dim(d);
    const int nq = 1 << d;
    Eigen::MatrixXd block(nq, nq);
    for (int x = 0; x < nq; ++x) {
        for (int y = 0; y < nq; ++y) {
            block(x, y) = full(Eigen::Index{1} << x, Eigen::Index{1} << y);
        }
    }
    return block;
}

double transfer_fidelity(int d, const Eigen::VectorXd& omega, const Eigen::MatrixXd& coupling,
                         const dynamics::TransferSpec& spec, double omega0, double zeta,
                         double t) {
    check_dim(d);
    const int nq = 1 << d;
    const Eigen::Index dim = Eigen::Index{1} << nq;
    const Eigen::MatrixXd h = full_hamiltonian(d, omega, coupling);

    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(dim);
    psi0(0) = spec.alpha;
    psi0(Eigen::Index{1} << spec.a.value()) = spec.beta;

    const int hd = topology::hamming_distance(spec.a, spec.b);
    const double tt = dynamics::transfer_time(zeta, omega0);
    const std::complex<double> phase = minus_i_pow(hd) * std::exp(-kI * omega0 * tt);
    Eigen::VectorXcd psif = Eigen::VectorXcd::Zero(dim);
    psif(0) = spec.alpha;
    psif(Eigen::Index{1} << spec.b.value()) = phase * spec.beta;

    const Eigen::VectorXcd psit = evolve(h, psi0, t);
    return std::norm(psif.dot(psit));
}

double excitation_variance(int d, const Eigen::VectorXd& omega, const Eigen::MatrixXd& coupling,
                           const dynamics::TransferSpec& spec, double t) {
    check_dim(d);
    const int nq = 1 << d;
    const Eigen::Index dim = Eigen::Index{1} << nq;
    const Eigen::MatrixXd h = full_hamiltonian(d, omega, coupling);
    const Eigen::VectorXd num = excitation_number_diagonal(d);

    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(dim);
    psi0(0) = spec.alpha;
    psi0(Eigen::Index{1} << spec.a.value()) = spec.beta;
    const Eigen::VectorXcd psi = evolve(h, psi0, t);

    double m1 = 0.0;
    for (Eigen::Index s = 0; s < dim; ++s) m1 += std::norm(psi(s)) * num(s);
    double var = 0.0;
    for (Eigen::Index s = 0; s < dim; ++s) {
        var += std::norm(psi(s)) * (num(s) - m1) * (num(s) - m1);
    }
    return var;
}

double energy_drift(int d, const Eigen::VectorXd& omega, const Eigen::MatrixXd& coupling,
                    const dynamics::TransferSpec& spec, double t) {
    check_dim(d);
    const int nq = 1 << d;
    const Eigen::Index dim = Eigen::Index{1} << nq;
    const Eigen::MatrixXd h = full_hamiltonian(d, omega, coupling);

    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(dim);
    psi0(0) = spec.alpha;
    psi0(Eigen::Index{1} << spec.a.value()) = spec.beta;
    const Eigen::VectorXcd psit = evolve(h, psi0, t);

    const double e0 = psi0.dot(apply_real(h, psi0)).real();
    const double et = psit.dot(apply_real(h, psit)).real();
    const double scale = std::max(std::abs(e0), 1e-300);
    return std::abs(et - e0) / scale;
}

}  // namespace hqst::oracle
