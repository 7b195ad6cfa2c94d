#include "hqst/decoherence.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hqst::decoherence {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

std::complex<double> plus_i_pow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

// n! exactly in double for n <= 18, via lgamma beyond.
double log_factorial(int n) { return std::lgamma(n + 1.0); }

double exact_factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

void DecoherenceParams::validate() const {
    if (t1 <= 0.0 || t_phi <= 0.0) throw std::invalid_argument("T1 and T_phi must be > 0");
}

double SubspaceDensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

MasterEquationResult integrate_master_equation(
    const Eigen::VectorXd& omega, const Eigen::SparseMatrix<double, Eigen::RowMajor>& coupling,
    const dynamics::TransferSpec& spec, const DecoherenceParams& dec,
    const std::vector<double>& t_grid, const ode::Options& opts) {
    dec.validate();
    const Eigen::Index n = omega.size();
    if (coupling.rows() != n) throw std::invalid_argument("coupling size mismatch");
    if ((Eigen::Index{1} << spec.a.dimension()) != n) {
        throw std::invalid_argument("transfer spec does not match the network size");
    }
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (t_grid[i] < t_grid[i - 1]) throw std::invalid_argument("time grid must be sorted");
    }

    const double t1_inv = 1.0 / dec.t1;
    const double t2_inv = 1.0 / dec.t2();
    const double w_ref = omega.mean();
    const Eigen::VectorXd dw = omega.array() - w_ref;

    using RowMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>;

    // State layout: [rho00, rho_0x (rotating), rho_x0 (rotating), block row-major].
    const Eigen::Index total = 1 + 2 * n + n * n;
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(total);
    const Eigen::Index a = spec.a.value();
    y(0) = std::norm(spec.alpha);
    y(1 + a) = spec.alpha * std::conj(spec.beta);
    y(1 + n + a) = std::conj(spec.alpha) * spec.beta;
    y(1 + 2 * n + a * n + a) = std::norm(spec.beta);

    const auto* cp = coupling.valuePtr();
    const auto* ci = coupling.innerIndexPtr();
    const auto* co = coupling.outerIndexPtr();

    // Elementwise block generator: frequency detunings plus the local decay
    // rates, applied as one coefficient-wise product per evaluation.
    RowMat local(n, n);
    for (Eigen::Index x = 0; x < n; ++x) {
        for (Eigen::Index yy = 0; yy < n; ++yy) {
            local(x, yy) = -kI * (dw(x) - dw(yy)) - (x == yy ? t1_inv : 2.0 * t2_inv);
        }
    }
    RowMat pbuf(n, n);  // scratch for Omega * B

    auto rhs = [&](double, const Eigen::VectorXcd& state, Eigen::VectorXcd& deriv) {
        const std::complex<double>* r0 = state.data() + 1;
        const std::complex<double>* c0 = state.data() + 1 + n;
        Eigen::Map<const RowMat> b(state.data() + 1 + 2 * n, n, n);
        std::complex<double>* dr0 = deriv.data() + 1;
        std::complex<double>* dc0 = deriv.data() + 1 + n;
        Eigen::Map<RowMat> db(deriv.data() + 1 + 2 * n, n, n);

        // Ground population feeds from the excited-block diagonal.
        std::complex<double> tr = 0.0;
        for (Eigen::Index x = 0; x < n; ++x) tr += b(x, x);
        deriv(0) = t1_inv * tr;

        // Coherences (rotating frame at w_ref).
        for (Eigen::Index x = 0; x < n; ++x) {
            std::complex<double> accr = 0.0, accc = 0.0;
            for (auto k = co[x]; k < co[x + 1]; ++k) {
                accr += cp[k] * r0[ci[k]];
                accc += cp[k] * c0[ci[k]];
            }
            dr0[x] = kI * (dw(x) * r0[x] + accr) - t2_inv * r0[x];
            dc0[x] = -kI * (dw(x) * c0[x] + accc) - t2_inv * c0[x];
        }

        // Excited block: -i [Omega, B] realized as -i (P - P^dagger) with
        // P = Omega B; B is Hermitian along the whole trajectory (the
        // generator maps Hermitian to Hermitian and Runge-Kutta updates are
        // elementwise-conjugate-symmetric), so B Omega = P^dagger exactly.
        pbuf.setZero();
        for (Eigen::Index x = 0; x < n; ++x) {
            auto prow = pbuf.row(x);
            for (auto k = co[x]; k < co[x + 1]; ++k) {
                prow += cp[k] * b.row(ci[k]);
            }
        }
        db = (-kI) * pbuf;
        db += kI * pbuf.adjoint();
        db += local.cwiseProduct(b);
    };

    MasterEquationResult out;
    out.trajectory.reserve(t_grid.size());

    auto observe = [&](double t, const Eigen::VectorXcd& state) {
        SubspaceDensityMatrix p;
        p.time = t;
        p.rho.resize(n + 1, n + 1);
        p.rho(0, 0) = state(0);
        const std::complex<double> back = std::exp(kI * w_ref * t);
        for (Eigen::Index x = 0; x < n; ++x) {
            p.rho(0, 1 + x) = back * state(1 + x);
            p.rho(1 + x, 0) = std::conj(back) * state(1 + n + x);
        }
        Eigen::Map<const RowMat> b(state.data() + 1 + 2 * n, n, n);
        p.rho.block(1, 1, n, n) = b;
        out.trajectory.push_back(std::move(p));
    };

    out.stats = ode::integrate_dopri5(rhs, y, t_grid, observe, opts);
    return out;
}

double ground_population_closed(double t, std::complex<double> beta, double t1) {
    return 1.0 - std::norm(beta) * std::exp(-t / t1);
}

std::complex<double> corner_coherence_closed(double t, int d, double zeta, double omega0,
                                             std::complex<double> alpha,
                                             std::complex<double> beta, double t2) {
    const double s = std::sin(0.5 * zeta * omega0 * t);
    return alpha * std::conj(beta) * std::exp(-t / t2) * std::exp(kI * omega0 * t) *
           plus_i_pow(d) * std::pow(s, d);
}

double dephasing_rate(int p, int n, int d, double t_phi) {
    if (n < 0 || n > d || p < 0 || p > n / 2) {
        throw std::out_of_range("dephasing_rate: require 0 <= n <= d, 0 <= p <= floor(n/2)");
    }
    double ratio;  // 2^{n-d-2p} (d-n+2p)! / (p! (d-n+p)!)
    if (d <= 18) {
        ratio = std::exp2(double(n - d - 2 * p)) * exact_factorial(d - n + 2 * p) /
                (exact_factorial(p) * exact_factorial(d - n + p));
    } else {
        ratio = std::exp((n - d - 2 * p) * std::numbers::ln2 + log_factorial(d - n + 2 * p) -
                         log_factorial(p) - log_factorial(d - n + p));
    }
    return (2.0 / t_phi) * (1.0 - ratio);
}

double dephasing_mode_weight(int n, double t, int d, double t_phi) {
    if (n < 0 || n > d) throw std::out_of_range("dephasing_mode_weight: require 0 <= n <= d");
    double sum = 0.0;
    const double degeneracy = (n == d) ? 1.0 : 2.0;
    for (int p = 0; p <= n / 2; ++p) {
        double coeff;
        if (d <= 18) {
            coeff = exact_factorial(d) * degeneracy * std::exp2(double(n - 2 * d - 2 * p)) /
                    (exact_factorial(p) * exact_factorial(n - 2 * p) *
                     exact_factorial(d - n + p));
        } else {
            coeff = degeneracy *
                    std::exp(log_factorial(d) + (n - 2 * d - 2 * p) * std::numbers::ln2 -
                             log_factorial(p) - log_factorial(n - 2 * p) -
                             log_factorial(d - n + p));
        }
        sum += coeff * std::exp(-dephasing_rate(p, n, d, t_phi) * t);
    }
    return sum;
}

double dephasing_mode_weight_sum(double t, int d, double t_phi) {
    double s = 0.0;
    for (int n = 0; n <= d; ++n) s += dephasing_mode_weight(n, t, d, t_phi);
    return s;
}

double target_population_closed(double t, int d, double zeta, double omega0,
                                std::complex<double> beta, const DecoherenceParams& dec) {
    dec.validate();
    double sum = 0.0;
    for (int n = 0; n <= d; ++n) {
        const double sign = ((d - n) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * dephasing_mode_weight(n, t, d, dec.t_phi) *
               std::cos(zeta * omega0 * t * (d - n));
    }
    return std::norm(beta) * std::exp(-t / dec.t1) * sum;
}

double transfer_fidelity_decoherent(std::complex<double> alpha, std::complex<double> beta, int d,
                                    double zeta, double omega0, const DecoherenceParams& dec) {
    dec.validate();
    const double t = dynamics::transfer_time(zeta, omega0);
    const double a2 = std::norm(alpha), b2 = std::norm(beta);
    const double e1 = std::exp(-t / dec.t1), e2 = std::exp(-t / dec.t2());
    return a2 - a2 * b2 * e1 + 2.0 * a2 * b2 * e2 +
           b2 * b2 * e1 * dephasing_mode_weight_sum(t, d, dec.t_phi);
}

double average_fidelity(int d, double zeta, double omega0, const DecoherenceParams& dec) {
    dec.validate();
    const double t = dynamics::transfer_time(zeta, omega0);
    const double e1 = std::exp(-t / dec.t1), e2 = std::exp(-t / dec.t2());
    return 0.5 - e1 / 6.0 + e2 / 3.0 + e1 * dephasing_mode_weight_sum(t, d, dec.t_phi) / 3.0;
}

double fidelity_lower_bound(double transfer_time, double t1, double t2) {
    if (transfer_time <= 0.0 || t1 <= 0.0 || t2 <= 0.0) {
        throw std::invalid_argument("times must be > 0");
    }
    return 0.5 - std::exp(-transfer_time / t1) / 6.0 + std::exp(-transfer_time / t2) / 3.0 +
           std::exp(-2.0 * transfer_time / t2) / 3.0;
}

double transfer_time_fixed_capacitor(int d, double zeta, double t_at_d1) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    return t_at_d1 * std::pow(1.0 + (d - 1) * zeta, 1.5);
}

}  // namespace hqst::decoherence
