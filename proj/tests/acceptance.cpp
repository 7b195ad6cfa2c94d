// Acceptance suite: exercises the headline results end to end and prints one
// PASS/FAIL line per criterion.  The exit code is the number of failures.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "hqst/circuit.hpp"
#include "hqst/decoherence.hpp"
#include "hqst/disorder.hpp"
#include "hqst/dynamics.hpp"
#include "hqst/io.hpp"
#include "hqst/krylov.hpp"
#include "hqst/oracle.hpp"
#include "hqst/rng.hpp"
#include "hqst/topology.hpp"

using namespace hqst;
using topology::NodeLabel;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kW0 = kTwoPi * 5e9;

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %2d: %s  %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double v) { return io::format_double(v); }

dynamics::EffectiveHamiltonian uniform_model(int d, double zeta, int order) {
    const Eigen::Index n = Eigen::Index{1} << d;
    const Eigen::VectorXd w = Eigen::VectorXd::Constant(n, kW0);
    auto coupling = circuit::coupling_matrix(w, zeta, topology::adjacency_sparse(d), order);
    return dynamics::EffectiveHamiltonian::node_space(d, w, coupling, kW0, zeta);
}

// 1. Perfect transfer on the ideal first-order model for every d <= 12.
void criterion_1() {
    const double zeta = 0.005;
    const double t = dynamics::transfer_time(zeta, kW0);
    double worst = 0.0;
    for (int d = 1; d <= 12; ++d) {
        auto h = uniform_model(d, zeta, 1);
        dynamics::TransferSpec spec(NodeLabel(d, 0), NodeLabel(d, (1u << d) - 1),
                                    std::complex<double>(0.6, 0.0), std::complex<double>(0.0, 0.8));
        const double f = dynamics::transfer_fidelity(h, spec, t).fidelity;
        worst = std::max(worst, std::abs(f - 1.0));
    }
    report(1, worst <= 1e-9, "ideal transfer d=1..12: max |1-F(T)| = " + fmt(worst));
}

// 2. Transfer time at the experimental operating point.
void criterion_2() {
    const double t = dynamics::transfer_time(0.005, kW0);
    const double rel = std::abs(t / 20e-9 - 1.0);
    report(2, rel <= 1e-14, "T(zeta=0.005, 5 GHz) = " + fmt(t * 1e9) + " ns");
}

// 3. Error-scaling laws against the perturbative models at d = 10.
//
// The uncorrected check is strict at the top of the sweep: pi^2 d^2 zeta^2/2
// is the large-d, small-zeta asymptote (the exact small-zeta limit carries
// d(d-1), i.e. 0.90 of the model at d = 10), and at zeta = 0.02 the error has
// reached 0.15 and saturates below the quadratic law.  The measured deviation
// there is 25.1% against the 25% gate; every other grid point passes.
// The corrected variant is evaluated at its calibrated revival: the row
// correction renormalizes the linear spectral coefficient by ~4 zeta^2 j(j+1),
// which an experiment removes by retuning; at the nominal time that linear
// mismatch would swamp the residual the model describes.
void criterion_3() {
    const int d = 10;
    const int points = 9;
    double worst_unc = 0.0, worst_cor = 0.0;
    double worst_unc_zeta = 0.0, worst_cor_zeta = 0.0;
    for (int i = 0; i < points; ++i) {
        const double zeta = 0.002 * std::pow(10.0, static_cast<double>(i) / (points - 1));
        const double unc = dynamics::column_space_transfer_error(d, zeta, kW0, 3, false, false);
        const double cor = dynamics::column_space_transfer_error(d, zeta, kW0, 3, true, true);
        const double dev_u = std::abs(unc / dynamics::predicted_transfer_error(d, zeta, false) - 1.0);
        const double dev_c = std::abs(cor / dynamics::predicted_transfer_error(d, zeta, true) - 1.0);
        if (dev_u > worst_unc) { worst_unc = dev_u; worst_unc_zeta = zeta; }
        if (dev_c > worst_cor) { worst_cor = dev_c; worst_cor_zeta = zeta; }
    }
    const double unc5 = dynamics::column_space_transfer_error(d, 0.005, kW0, 3, false, false);
    const double cor5 = dynamics::column_space_transfer_error(d, 0.005, kW0, 3, true, true);
    const double gain = unc5 / cor5;

    const bool pass_unc = worst_unc <= 0.25;
    const bool pass_cor = worst_cor <= 0.40;
    const bool pass_gain = gain >= 100.0;
    report(3, pass_unc && pass_cor && pass_gain,
           "uncorrected dev " + fmt(worst_unc) + " @zeta=" + fmt(worst_unc_zeta) +
               " (<=0.25); corrected dev " + fmt(worst_cor) + " @zeta=" + fmt(worst_cor_zeta) +
               " (<=0.40); improvement " + fmt(gain) + "x (>=100)");
}

// 4. Closed-form target population against the master-equation integrator.
//
// The closed form is perturbative in the decoherence rates and lags the exact
// trajectory by a fraction of a nanosecond at these parameters.  The honest
// gap at d = 2 is 0.0252 against the 0.02 gate (cross-checked with an
// independent integrator); it vanishes at t = 0, T, 2T, shrinks with
// dimension (0.0179 at d = 10, passing) and with weaker decoherence.
void criterion_4() {
    const double zeta = 0.005;
    const decoherence::DecoherenceParams dec{120e-9, 120e-9};
    const double t_total = 2.0 * dynamics::transfer_time(zeta, kW0);
    bool pass = true;
    std::string detail;
    for (int d : {2, 10}) {
        const Eigen::Index n = Eigen::Index{1} << d;
        const Eigen::VectorXd w = Eigen::VectorXd::Constant(n, kW0);
        auto coup = circuit::coupling_matrix(w, zeta, topology::adjacency_sparse(d), 1);
        dynamics::TransferSpec spec(NodeLabel(d, 0), NodeLabel(d, (1u << d) - 1), 0.0, 1.0);
        std::vector<double> grid(81);
        for (int i = 0; i < 81; ++i) grid[i] = t_total * i / 80;
        const auto t0 = std::chrono::steady_clock::now();
        auto res = decoherence::integrate_master_equation(w, coup.entries, spec, dec, grid);
        const auto t1 = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (const auto& p : res.trajectory) {
            const double cf =
                decoherence::target_population_closed(p.time, d, zeta, kW0, 1.0, dec);
            worst = std::max(worst, std::abs(p.node_population(n - 1) - cf));
        }
        pass = pass && worst <= 0.02;
        detail += "d=" + std::to_string(d) + ": max dev " + fmt(worst) + " (integrated in " +
                  fmt(std::chrono::duration<double>(t1 - t0).count()) + " s); ";
    }
    report(4, pass, detail + "tolerance 0.02");
}

// 5. Size-independent decoherence bound at the experimental numbers.
void criterion_5() {
    const double bound = decoherence::fidelity_lower_bound(20e-9, 120e-9, 80e-9);
    const decoherence::DecoherenceParams dec{120e-9, 120e-9};
    bool pass = std::abs(bound - 0.8207) <= 1e-4 && bound >= 0.80;
    double min_favg = 1.0;
    for (int d : {1, 2, 5, 10}) {
        min_favg = std::min(min_favg, decoherence::average_fidelity(d, 0.005, kW0, dec));
    }
    pass = pass && min_favg >= bound;
    report(5, pass,
           "bound = " + fmt(bound) + " (0.8207 +- 1e-4); min F_avg over d = " + fmt(min_favg));
}

// 6. Disordered couplings at ten-percent spread.
void criterion_6() {
    disorder::DisorderConfig cfg;
    cfg.d = 10;
    cfg.zeta = 0.005;
    cfg.omega0 = kW0;
    cfg.delta_zeta = 0.1 * cfg.zeta;
    cfg.trials = 1000;
    cfg.seed = 20260809;
    auto res = disorder::average_fidelity(cfg);
    report(6, res.mean_fidelity > 0.95,
           "d=10, 10% disorder, 1000 trials: mean F = " + fmt(res.mean_fidelity) + " +- " +
               fmt(res.std_error) + " (>0.95)");
}

// 7. Localization scaling of the ensemble fidelity.
void criterion_7() {
    auto fit_at = [&](double rel) {
        std::vector<std::pair<int, double>> pts;
        for (int d : {6, 8, 10}) {
            disorder::DisorderConfig cfg;
            cfg.d = d;
            cfg.zeta = 0.005;
            cfg.omega0 = kW0;
            cfg.delta_zeta = rel * cfg.zeta;
            cfg.trials = d <= 6 ? 3000 : (d <= 8 ? 1500 : 800);
            cfg.seed = 7070 + d;
            pts.emplace_back(d, disorder::average_fidelity(cfg).mean_fidelity);
        }
        return disorder::fit_localization(pts);
    };
    const auto f1 = fit_at(0.25);
    const auto f2 = fit_at(0.5);
    const double ratio = f1.length / f2.length;
    const bool pass = f1.r_squared > 0.9 && f2.r_squared > 0.9 && ratio >= 2.0 && ratio <= 6.0;
    report(7, pass,
           "ln F vs d: R^2 = " + fmt(f1.r_squared) + ", " + fmt(f2.r_squared) +
               " (>0.9); length ratio for 2x disorder = " + fmt(ratio) + " (~4 within 50%)");
}

// 8. Full-space oracle equivalence for d <= 3.
void criterion_8() {
    rng::Stream stream(424242);
    double worst_f = 0.0, worst_h = 0.0;
    for (int rep = 0; rep < 12; ++rep) {
        const int d = 1 + rep % 3;
        const Eigen::Index n = Eigen::Index{1} << d;
        Eigen::VectorXd w(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            w(i) = kW0 * (1.0 + 0.02 * stream.next_symmetric(1.0));
        }
        const double zeta = 0.005 + 0.01 * stream.next_open01();
        auto coup = circuit::coupling_matrix(w, zeta, topology::adjacency_sparse(d), 3);
        auto heff = dynamics::EffectiveHamiltonian::node_space(d, w, coup, kW0, zeta);

        Eigen::MatrixXd full = oracle::full_hamiltonian(d, w, coup.dense());
        Eigen::MatrixXd block = oracle::single_excitation_block(d, full);
        const Eigen::MatrixXd shifted =
            block - full(0, 0) * Eigen::MatrixXd::Identity(n, n);
        worst_h = std::max(worst_h, (shifted - heff.dense()).cwiseAbs().maxCoeff() / kW0);

        const double amp = std::sqrt(stream.next_open01());
        dynamics::TransferSpec spec(NodeLabel(d, 0), NodeLabel(d, (1u << d) - 1),
                                    std::complex<double>(amp, 0.0),
                                    std::complex<double>(0.0, std::sqrt(1.0 - amp * amp)));
        const double t = stream.next_open01() * 4e-8;
        const double f_full = oracle::transfer_fidelity(d, w, coup.dense(), spec, kW0, zeta, t);
        const double f_sub = dynamics::transfer_fidelity(heff, spec, t).fidelity;
        worst_f = std::max(worst_f, std::abs(f_full - f_sub));
    }
    report(8, worst_f <= 1e-9 && worst_h <= 1e-12,
           "max |F_full - F_sub| = " + fmt(worst_f) + " (<=1e-9); max block mismatch / omega0 = " +
               fmt(worst_h) + " (<=1e-12)");
}

// 9. Invariant suite over randomized parameter grids.
void criterion_9() {
    rng::Stream stream(13131313);
    int cases = 0;
    bool pass = true;
    std::string detail;

    // Unitarity of coherent propagation (40 cases).
    double worst_unit = 0.0;
    for (int rep = 0; rep < 40; ++rep) {
        const int d = 1 + static_cast<int>(stream.next_open01() * 9.999);
        const double zeta = 0.002 + 0.015 * stream.next_open01();
        auto h = uniform_model(d, zeta, 3);
        const double t = stream.next_open01() * 2.0 * dynamics::transfer_time(zeta, kW0);
        auto r = dynamics::propagate(h, NodeLabel(d, 0), t);
        worst_unit = std::max(worst_unit, std::abs(r.amplitudes.norm() - 1.0));
        ++cases;
    }
    pass = pass && worst_unit <= 1e-10;

    // Master-equation trajectory invariants (12 trajectories x 11 points).
    double worst_trace = 0.0, worst_herm = 0.0, worst_pos = 0.0;
    for (int rep = 0; rep < 12; ++rep) {
        const int d = 1 + rep % 4;
        const Eigen::Index n = Eigen::Index{1} << d;
        const double zeta = 0.003 + 0.01 * stream.next_open01();
        const Eigen::VectorXd w = Eigen::VectorXd::Constant(n, kW0);
        auto coup = circuit::coupling_matrix(w, zeta, topology::adjacency_sparse(d), 1);
        decoherence::DecoherenceParams dec{(30.0 + 300.0 * stream.next_open01()) * 1e-9,
                                           (30.0 + 300.0 * stream.next_open01()) * 1e-9};
        const double a2 = stream.next_open01();
        dynamics::TransferSpec spec(NodeLabel(d, 0), NodeLabel(d, (1u << d) - 1), std::sqrt(a2),
                                    std::sqrt(1.0 - a2));
        const double tmax = 2.0 * dynamics::transfer_time(zeta, kW0);
        std::vector<double> grid(11);
        for (int i = 0; i < 11; ++i) grid[i] = tmax * i / 10;
        auto res = decoherence::integrate_master_equation(w, coup.entries, spec, dec, grid);
        for (const auto& p : res.trajectory) {
            worst_trace = std::max(worst_trace, p.trace_error());
            worst_herm = std::max(worst_herm, p.hermiticity_error());
            worst_pos = std::max(worst_pos, -p.min_eigenvalue());
            ++cases;
        }
    }
    pass = pass && worst_trace <= 1e-9 && worst_herm <= 1e-12 && worst_pos <= 1e-9;

    // Dephasing-rate bound and mode-weight inequalities (60 cases).
    bool rates_ok = true;
    for (int rep = 0; rep < 60; ++rep) {
        const int d = 1 + static_cast<int>(stream.next_open01() * 11.999);
        const double tphi = (20.0 + 400.0 * stream.next_open01()) * 1e-9;
        const double t = stream.next_open01() * 60e-9;
        for (int nn = 0; nn <= d; ++nn) {
            for (int p = 0; p <= nn / 2; ++p) {
                const double rate = decoherence::dephasing_rate(p, nn, d, tphi);
                rates_ok = rates_ok && rate >= -1e-12 && rate <= 2.0 / tphi + 1e-12;
            }
            rates_ok = rates_ok && decoherence::dephasing_mode_weight(nn, t, d, tphi) >= 0.0;
        }
        rates_ok = rates_ok && decoherence::dephasing_mode_weight_sum(t, d, tphi) >=
                                   std::exp(-2.0 * t / tphi) - 1e-12;
        ++cases;
    }
    pass = pass && rates_ok;

    // Coherent-limit trig identity (36 cases).
    double worst_trig = 0.0;
    for (int rep = 0; rep < 36; ++rep) {
        const int d = 1 + rep % 9;
        const double zeta = 0.004 + 0.006 * stream.next_open01();
        const double t = stream.next_open01() * 2.0 * dynamics::transfer_time(zeta, kW0);
        double acc = 0.0;
        for (int nn = 0; nn <= d; ++nn) {
            const double sign = ((d - nn) % 2 == 0) ? 1.0 : -1.0;
            acc += sign * decoherence::dephasing_mode_weight(nn, t, d, 1e30) *
                   std::cos(zeta * kW0 * t * (d - nn));
        }
        worst_trig =
            std::max(worst_trig, std::abs(acc - std::pow(std::sin(0.5 * zeta * kW0 * t), 2 * d)));
        ++cases;
    }
    pass = pass && worst_trig <= 1e-12;

    report(9, pass,
           std::to_string(cases) + " cases: unitarity " + fmt(worst_unit) + ", trace " +
               fmt(worst_trace) + ", hermiticity " + fmt(worst_herm) + ", positivity " +
               fmt(worst_pos) + ", trig " + fmt(worst_trig) + ", rate bounds " +
               (rates_ok ? "ok" : "violated"));
}

// 10. Determinism of seeded ensembles across thread counts.
void criterion_10() {
    auto render = [&](int threads) {
        disorder::DisorderConfig cfg;
        cfg.d = 6;
        cfg.zeta = 0.005;
        cfg.omega0 = kW0;
        cfg.delta_zeta = 0.3 * cfg.zeta;
        cfg.trials = 200;
        cfg.seed = 11111;
        cfg.threads = threads;
        auto res = disorder::average_fidelity(cfg);
        io::Table t("determinism probe", {"trial", "fidelity"});
        t.set_meta("seed", static_cast<std::int64_t>(cfg.seed));
        for (std::size_t i = 0; i < res.per_trial_fidelity.size(); ++i) {
            t.add_row({std::to_string(i), fmt(res.per_trial_fidelity[i])});
        }
        return t.to_csv(false);
    };
    const std::string a = render(1);
    const std::string b = render(4);
    const std::string c = render(3);
    report(10, a == b && a == c,
           "seeded ensemble output is byte-identical across 1/3/4 worker threads");
}

}  // namespace

int main() {
    std::printf("hqst acceptance suite\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures;
}
