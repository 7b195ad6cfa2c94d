#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace hqst::disorder {

/// Static coupling-disorder ensemble description.  delta_zeta is the
/// half-width of the uniform per-edge perturbation z_jk, in the same
/// dimensionless units as zeta.
struct DisorderConfig {
    int d = 0;
    double zeta = 0.0;
    double omega0 = 0.0;       // rad/s
    double delta_zeta = 0.0;   // absolute half-width, must stay below zeta
    int trials = 1;
    std::uint64_t seed = 0;
    int threads = 1;

    void validate() const;
};

/// One disorder realization: Omega_jk = omega0 (zeta + z_jk) A_jk / 2 with
/// z_jk = z_kj drawn uniformly from (-delta_zeta, delta_zeta), one draw per
/// undirected edge in canonical order.  Higher-order coupling terms are
/// excluded in the disordered model.
Eigen::SparseMatrix<double, Eigen::RowMajor> sample_coupling(int d, double zeta,
                                                             double delta_zeta, double omega0,
                                                             std::uint64_t stream_seed);

struct EnsembleResult {
    DisorderConfig config;
    std::vector<double> per_trial_fidelity;
    double mean_fidelity = 0.0;
    double std_error = 0.0;  // sample std / sqrt(trials)
};

/// Corner-to-corner transfer fidelity |f_b(T)|^2 at the nominal
/// T = pi/(zeta omega0), averaged over the disorder ensemble.  Trials use
/// independent counter-derived streams, so the result is reproducible for a
/// fixed seed regardless of the thread count.
EnsembleResult average_fidelity(const DisorderConfig& config);

/// Single-trial fidelity (exposed for property tests).
double trial_fidelity(const DisorderConfig& config, std::uint64_t trial_index,
                      double* norm_error = nullptr);

struct LocalizationFit {
    double length = 0.0;      // ell in F ~ e^{-d/ell}; +inf flags a degenerate fit
    double intercept = 0.0;   // ln F extrapolated to d = 0
    double r_squared = 0.0;   // of ln(mean F) vs d
};

/// Least-squares fit of ln(mean F) against d.  Requires >= 3 points with
/// positive mean fidelity; an essentially flat or rising trend is reported
/// as length = +infinity.
LocalizationFit fit_localization(const std::vector<std::pair<int, double>>& mean_fidelity_by_d);

struct GaussianFit {
    double amplitude = 0.0;  // F(0)
    double width = 0.0;      // F = amplitude * exp(-(x/width)^2)
    double r_squared = 0.0;  // in linear F space
};

/// Fit of mean F against delta_zeta by a centred Gaussian (linear least
/// squares on ln F vs delta_zeta^2).
GaussianFit fit_gaussian(const std::vector<std::pair<double, double>>& mean_fidelity_by_delta);

}  // namespace hqst::disorder
