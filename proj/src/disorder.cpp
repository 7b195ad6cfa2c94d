#include "hqst/disorder.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "hqst/dynamics.hpp"
#include "hqst/krylov.hpp"
#include "hqst/rng.hpp"

namespace hqst::disorder {

void DisorderConfig::validate() const {
    if (d < 1 || d > 20) throw std::invalid_argument("dimension out of range");
    if (zeta <= 0.0 || zeta * d >= 1.0) throw std::invalid_argument("zeta out of range");
    if (omega0 <= 0.0) throw std::invalid_argument("omega0 must be > 0");
    if (delta_zeta < 0.0 || delta_zeta >= zeta) {
        throw std::invalid_argument("delta_zeta must lie in [0, zeta) so couplings stay positive");
    }
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

Eigen::SparseMatrix<double, Eigen::RowMajor> sample_coupling(int d, double zeta,
                                                             double delta_zeta, double omega0,
                                                             std::uint64_t stream_seed) {
    const Eigen::Index n = Eigen::Index{1} << d;
    rng::Stream stream(stream_seed);

    // Canonical edge order: ascending lower endpoint, then ascending flipped
    // machine bit.  One symmetric draw per undirected edge.
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(2 * d * (n / 2));
    for (Eigen::Index x = 0; x < n; ++x) {
        for (int j = 0; j < d; ++j) {
            const Eigen::Index y = x ^ (Eigen::Index{1} << j);
            if (y < x) continue;
            const double z = delta_zeta > 0.0 ? stream.next_symmetric(delta_zeta) : 0.0;
            const double w = 0.5 * omega0 * (zeta + z);
            trip.emplace_back(x, y, w);
            trip.emplace_back(y, x, w);
        }
    }
    Eigen::SparseMatrix<double, Eigen::RowMajor> m(n, n);
    m.setFromTriplets(trip.begin(), trip.end());
    m.makeCompressed();
    return m;
}

double trial_fidelity(const DisorderConfig& config, std::uint64_t trial_index,
                      double* norm_error) {
    const auto coupling = sample_coupling(config.d, config.zeta, config.delta_zeta, config.omega0,
                                          rng::substream_seed(config.seed, trial_index));
    // Uniform omega0 on the diagonal commutes with everything and cannot
    // change |f_b|; evolve under the coupling alone.
    const double t = dynamics::transfer_time(config.zeta, config.omega0);
    const Eigen::VectorXcd f = krylov::evolve_basis_vector(coupling, 0, t);
    if (norm_error) *norm_error = std::abs(f.norm() - 1.0);
    return std::norm(f(f.size() - 1));
}

EnsembleResult average_fidelity(const DisorderConfig& config) {
    config.validate();
    EnsembleResult out;
    out.config = config;
    out.per_trial_fidelity.assign(config.trials, 0.0);

    const int nthreads = std::min<int>(config.threads, config.trials);
    if (nthreads <= 1) {
        for (int i = 0; i < config.trials; ++i) {
            out.per_trial_fidelity[i] = trial_fidelity(config, i);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int w = 0; w < nthreads; ++w) {
            pool.emplace_back([&, w]() {
                for (int i = w; i < config.trials; i += nthreads) {
                    out.per_trial_fidelity[i] = trial_fidelity(config, i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    // Index-ordered aggregation keeps the result independent of scheduling.
    double sum = 0.0;
    for (double f : out.per_trial_fidelity) sum += f;
    out.mean_fidelity = sum / config.trials;
    double var = 0.0;
    for (double f : out.per_trial_fidelity) {
        var += (f - out.mean_fidelity) * (f - out.mean_fidelity);
    }
    if (config.trials > 1) {
        var /= (config.trials - 1);
        out.std_error = std::sqrt(var / config.trials);
    }
    return out;
}

LocalizationFit fit_localization(const std::vector<std::pair<int, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("localization fit needs >= 3 dimensions");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(points.size());
    for (const auto& [d, f] : points) {
        if (f <= 0.0) throw std::invalid_argument("localization fit needs positive fidelities");
        sx += d;
        sy += std::log(f);
        sxx += double(d) * d;
        sxy += d * std::log(f);
    }
    const double denom = m * sxx - sx * sx;
    const double slope = (m * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / m;

    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / m;
    for (const auto& [d, f] : points) {
        const double y = std::log(f);
        ss_res += (y - slope * d - intercept) * (y - slope * d - intercept);
        ss_tot += (y - ybar) * (y - ybar);
    }

    LocalizationFit fit;
    fit.intercept = intercept;
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.length = slope < -1e-12 ? -1.0 / slope : std::numeric_limits<double>::infinity();
    return fit;
}

GaussianFit fit_gaussian(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("gaussian fit needs >= 2 points");
    // ln F = ln A - x^2 / w^2: linear least squares in u = x^2.
    double su = 0, sy = 0, suu = 0, suy = 0;
    const double m = static_cast<double>(points.size());
    for (const auto& [x, f] : points) {
        if (f <= 0.0) throw std::invalid_argument("gaussian fit needs positive fidelities");
        const double u = x * x;
        su += u;
        sy += std::log(f);
        suu += u * u;
        suy += u * std::log(f);
    }
    const double denom = m * suu - su * su;
    if (std::abs(denom) < 1e-300) throw std::invalid_argument("gaussian fit is degenerate");
    const double slope = (m * suy - su * sy) / denom;  // -1/w^2
    const double lnA = (sy - slope * su) / m;

    GaussianFit fit;
    fit.amplitude = std::exp(lnA);
    fit.width = slope < 0.0 ? std::sqrt(-1.0 / slope) : std::numeric_limits<double>::infinity();

    double ss_res = 0, ss_tot = 0, fbar = 0;
    for (const auto& [x, f] : points) fbar += f;
    fbar /= m;
    for (const auto& [x, f] : points) {
        const double pred = fit.amplitude * std::exp(slope * x * x);
        ss_res += (f - pred) * (f - pred);
        ss_tot += (f - fbar) * (f - fbar);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

}  // namespace hqst::disorder
