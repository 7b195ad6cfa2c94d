// Command-line front end: figure-style sweeps, decoherence bounds, subcube
// programming, and disorder ensembles, emitted as CSV/JSON/SVG.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hqst/circuit.hpp"
#include "hqst/decoherence.hpp"
#include "hqst/disorder.hpp"
#include "hqst/dynamics.hpp"
#include "hqst/io.hpp"
#include "hqst/oracle.hpp"
#include "hqst/topology.hpp"

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct RunConfig {
    std::vector<int> d_list{10};
    double zeta = 0.005;
    double omega_ghz = 5.0;
    double t1_ns = 120.0;
    double tphi_ns = 120.0;
    std::vector<double> delta_zeta{};
    bool relative_delta = false;
    int trials = 0;  // 0 = per-dimension default
    std::uint64_t seed = 1;
    int order = hqst::circuit::kDefaultCouplingOrder;
    bool corrected = false;
    int threads = 1;
    std::string out;
    std::string format = "csv";
    bool no_timestamp = false;

    // fig2 sweep range
    double zeta_min = 0.002;
    double zeta_max = 0.02;
    int zeta_points = 9;

    // fig3/fig4 grids
    int time_points = 81;

    // program
    std::string corner_a, corner_b;
    double detuning_factor = hqst::dynamics::kDefaultDetuningFactor;

    bool dump_trials = false;

    // circuit-parameter route (exclusive with direct zeta/omega)
    std::optional<double> junction_capacitance_f;
    std::optional<double> coupling_capacitance_f;
    std::optional<double> critical_current_a;
    std::optional<double> bias_current_a;
    std::optional<double> wire_inductance_h;

    double omega0() const { return kTwoPi * omega_ghz * 1e9; }
    hqst::decoherence::DecoherenceParams decoherence() const {
        return {t1_ns * 1e-9, tphi_ns * 1e-9};
    }
};

// Keys shared by the JSON config file and the flag set; flags win.
void apply_config_file(CLI::App& app, RunConfig& cfg, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("--config", "cannot open config file " + path);
    nlohmann::json j;
    f >> j;

    auto flag_given = [&](const std::string& name) {
        const CLI::Option* opt = app.get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    auto load_double = [&](const char* key, const char* flag, double& target) {
        if (j.contains(key) && !flag_given(flag)) target = j.at(key).get<double>();
    };

    load_double("zeta", "--zeta", cfg.zeta);
    load_double("omega_ghz", "--omega-ghz", cfg.omega_ghz);
    load_double("t1_ns", "--t1-ns", cfg.t1_ns);
    load_double("tphi_ns", "--tphi-ns", cfg.tphi_ns);
    load_double("detuning_factor", "--detuning-factor", cfg.detuning_factor);
    if (j.contains("d") && !flag_given("--d")) cfg.d_list = {j.at("d").get<int>()};
    if (j.contains("trials") && !flag_given("--trials")) cfg.trials = j.at("trials").get<int>();
    if (j.contains("seed") && !flag_given("--seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("order") && !flag_given("--order")) cfg.order = j.at("order").get<int>();
    if (j.contains("corrected") && !flag_given("--corrected")) {
        cfg.corrected = j.at("corrected").get<bool>();
    }
    if (j.contains("threads") && !flag_given("--threads")) cfg.threads = j.at("threads").get<int>();
    if (j.contains("delta_zeta") && !flag_given("--delta-zeta")) {
        if (j.at("delta_zeta").is_array()) {
            cfg.delta_zeta = j.at("delta_zeta").get<std::vector<double>>();
        } else {
            cfg.delta_zeta = {j.at("delta_zeta").get<double>()};
        }
    }
    if (j.contains("relative_delta") && !flag_given("--relative-delta")) {
        cfg.relative_delta = j.at("relative_delta").get<bool>();
    }

    // Physical-circuit route: zeta and omega derive from the capacitor network.
    auto load_opt = [&](const char* key, std::optional<double>& target) {
        if (j.contains(key)) target = j.at(key).get<double>();
    };
    load_opt("junction_capacitance_f", cfg.junction_capacitance_f);
    load_opt("coupling_capacitance_f", cfg.coupling_capacitance_f);
    load_opt("critical_current_a", cfg.critical_current_a);
    load_opt("bias_current_a", cfg.bias_current_a);
    load_opt("wire_inductance_h", cfg.wire_inductance_h);

    const bool circuit_route = cfg.junction_capacitance_f.has_value();
    const bool direct_route = flag_given("--zeta") || flag_given("--omega-ghz") ||
                              j.contains("zeta") || j.contains("omega_ghz");
    if (circuit_route && direct_route) {
        throw CLI::ValidationError(
            "config", "supply either zeta/omega directly or circuit values, not both");
    }
    if (circuit_route) {
        if (!cfg.coupling_capacitance_f || !cfg.critical_current_a) {
            throw CLI::ValidationError("config",
                                       "circuit route needs junction_capacitance_f, "
                                       "coupling_capacitance_f and critical_current_a");
        }
        hqst::circuit::CircuitParams p;
        p.junction_capacitance = *cfg.junction_capacitance_f;
        p.coupling_capacitance = *cfg.coupling_capacitance_f;
        p.critical_current = *cfg.critical_current_a;
        if (cfg.bias_current_a) p.bias_currents = {*cfg.bias_current_a};
        p.dimension = cfg.d_list.front();
        cfg.zeta = hqst::circuit::coupling_parameter(p);
        const double inv_diag = hqst::circuit::inverse_capacitance_diagonal(p);
        // GHz convenience field: solve for the bias current that tunes the
        // junction down to the requested operating frequency.
        if (j.contains("qubit_frequency_ghz")) {
            if (cfg.bias_current_a) {
                throw CLI::ValidationError(
                    "config", "give either bias_current_a or qubit_frequency_ghz, not both");
            }
            const double target = kTwoPi * 1e9 * j.at("qubit_frequency_ghz").get<double>();
            const double plasma =
                hqst::circuit::qubit_frequency(p.critical_current, 0.0, inv_diag);
            const double ratio = hqst::circuit::bias_ratio_for_frequency(target, plasma);
            p.bias_currents = {ratio * p.critical_current};
        }
        cfg.omega_ghz = hqst::circuit::qubit_frequency(p.critical_current, p.bias_current(0),
                                                       inv_diag) /
                        (kTwoPi * 1e9);
    }
}

// The thread count is deliberately not echoed: results are independent of it
// and outputs stay byte-identical across worker configurations.
void stamp_common_meta(hqst::io::Table& table, const RunConfig& cfg) {
    table.set_meta("seed", static_cast<std::int64_t>(cfg.seed));
}

int emit(const hqst::io::Table& table, const RunConfig& cfg,
         const std::vector<hqst::io::Series>& series, const hqst::io::PlotOptions& plot) {
    std::string payload;
    if (cfg.format == "csv") {
        payload = table.to_csv(!cfg.no_timestamp);
    } else if (cfg.format == "json") {
        payload = table.to_json(!cfg.no_timestamp);
    } else if (cfg.format == "svg") {
        if (series.empty()) {
            throw CLI::ValidationError("--format", "svg output is not defined for this command");
        }
        payload = hqst::io::render_svg(series, plot);
    } else {
        throw CLI::ValidationError("--format", "unknown format " + cfg.format);
    }
    if (cfg.out.empty()) {
        std::cout << payload;
    } else {
        hqst::io::write_file(cfg.out, payload);
    }
    return 0;
}

std::string fmt(double v) { return hqst::io::format_double(v); }

int default_trials(int d) {
    if (d <= 8) return 10000;
    if (d <= 12) return 1000;
    return 100;
}

// ---------------------------------------------------------------- topology

int cmd_topology(const RunConfig& cfg) {
    const int d = cfg.d_list.front();
    if (d < 1 || d > 10) {
        throw CLI::ValidationError("--d", "topology report supports 1 <= d <= 10");
    }
    Eigen::MatrixXd a = hqst::topology::adjacency_matrix(d);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();

    hqst::io::Table spectrum("hqst topology", {"k", "eigenvalue", "multiplicity"});
    spectrum.set_meta("d", static_cast<std::int64_t>(d));
    spectrum.set_meta("nodes", static_cast<std::int64_t>(1 << d));
    spectrum.set_meta("edges", static_cast<std::int64_t>(hqst::topology::edge_count(d)));
    Eigen::Index i = 0;
    int k = 0;
    while (i < ev.size()) {
        Eigen::Index j = i;
        while (j < ev.size() && std::abs(ev(j) - ev(i)) < 1e-6) ++j;
        const double rounded = std::round(ev(i)) + 0.0;  // normalize -0
        spectrum.add_row({std::to_string(k), fmt(rounded == 0.0 ? 0.0 : rounded),
                          std::to_string(static_cast<long long>(j - i))});
        i = j;
        ++k;
    }

    if (!cfg.out.empty()) {
        // --out is a prefix here: the adjacency and the spectrum are separate tables.
        hqst::io::write_file(cfg.out + ".adjacency.csv", hqst::topology::adjacency_csv(d));
        hqst::io::write_file(cfg.out + ".spectrum.csv", spectrum.to_csv(!cfg.no_timestamp));
        return 0;
    }
    if (cfg.format == "json") {
        std::cout << spectrum.to_json(!cfg.no_timestamp);
        return 0;
    }
    std::cout << "# adjacency (row-major 0/1)\n"
              << hqst::topology::adjacency_csv(d) << spectrum.to_csv(!cfg.no_timestamp);
    return 0;
}

// -------------------------------------------------------------------- fig2

int cmd_fig2(const RunConfig& cfg) {
    if (cfg.zeta_max > 0.05) {
        throw CLI::ValidationError("--zeta-max", "perturbative sweep expects zeta <= 0.05");
    }
    hqst::io::Table table("hqst fig2",
                          {"d", "zeta", "corrected", "fidelity", "error", "time_ns",
                           "model_error"});
    table.set_meta("omega_ghz", cfg.omega_ghz);
    table.set_meta("order", static_cast<std::int64_t>(cfg.order));
    table.set_meta("zeta_min", cfg.zeta_min);
    table.set_meta("zeta_max", cfg.zeta_max);
    table.set_meta("zeta_points", static_cast<std::int64_t>(cfg.zeta_points));
    table.set_meta("evaluation", "uncorrected at nominal T, corrected at calibrated revival");
    stamp_common_meta(table, cfg);

    std::vector<hqst::io::Series> series;
    const std::vector<bool> variants = cfg.corrected ? std::vector<bool>{true}
                                                     : std::vector<bool>{false, true};
    for (int d : cfg.d_list) {
        for (bool corrected : variants) {
            hqst::io::Series sim{(corrected ? "corrected d=" : "uncorrected d=") +
                                     std::to_string(d),
                                 {}, {}};
            hqst::io::Series model{(corrected ? "model corrected d=" : "model uncorrected d=") +
                                       std::to_string(d),
                                   {}, {}};
            for (int i = 0; i < cfg.zeta_points; ++i) {
                const double frac = cfg.zeta_points == 1
                                        ? 0.0
                                        : static_cast<double>(i) / (cfg.zeta_points - 1);
                const double zeta = cfg.zeta_min * std::pow(cfg.zeta_max / cfg.zeta_min, frac);
                // The corrected protocol includes retuning to the calibrated
                // revival (the row correction renormalizes the effective
                // coupling); the uncorrected one runs at the nominal T.
                const double err = hqst::dynamics::column_space_transfer_error(
                    d, zeta, cfg.omega0(), cfg.order, corrected, /*calibrated=*/corrected);
                const double model_err =
                    hqst::dynamics::predicted_transfer_error(d, zeta, corrected);
                const double t_ns = hqst::dynamics::transfer_time(zeta, cfg.omega0()) * 1e9;
                table.add_row({std::to_string(d), fmt(zeta), corrected ? "1" : "0",
                               fmt(1.0 - err), fmt(err), fmt(t_ns), fmt(model_err)});
                sim.x.push_back(zeta);
                sim.y.push_back(err);
                model.x.push_back(zeta);
                model.y.push_back(model_err);
            }
            series.push_back(std::move(sim));
            series.push_back(std::move(model));
        }
    }
    hqst::io::PlotOptions plot;
    plot.title = "Transfer error vs coupling";
    plot.x_label = "zeta";
    plot.y_label = "1 - F";
    plot.log_x = true;
    plot.log_y = true;
    return emit(table, cfg, series, plot);
}

// -------------------------------------------------------------------- fig3

int cmd_fig3(const RunConfig& cfg) {
    for (int d : cfg.d_list) {
        if (d > 12) {
            throw CLI::ValidationError("--d", "trajectory integration is capped at d <= 12");
        }
    }
    hqst::io::Table table("hqst fig3", {"time_ns", "rho00", "rho_bb_numeric",
                                        "rho_bb_closed_form", "trace_error", "d"});
    table.set_meta("omega_ghz", cfg.omega_ghz);
    table.set_meta("zeta", cfg.zeta);
    table.set_meta("t1_ns", cfg.t1_ns);
    table.set_meta("tphi_ns", cfg.tphi_ns);
    stamp_common_meta(table, cfg);

    const double w0 = cfg.omega0();
    const auto dec = cfg.decoherence();
    std::vector<hqst::io::Series> series;
    for (int d : cfg.d_list) {
        const Eigen::Index n = Eigen::Index{1} << d;
        const Eigen::VectorXd w = Eigen::VectorXd::Constant(n, w0);
        auto coup = hqst::circuit::coupling_matrix(w, cfg.zeta,
                                                   hqst::topology::adjacency_sparse(d), 1);
        hqst::dynamics::TransferSpec spec(hqst::topology::NodeLabel(d, 0),
                                          hqst::topology::NodeLabel(d, (1u << d) - 1), 0.0, 1.0);
        const double tmax = 2.0 * hqst::dynamics::transfer_time(cfg.zeta, w0);
        std::vector<double> grid(cfg.time_points);
        for (int i = 0; i < cfg.time_points; ++i) grid[i] = tmax * i / (cfg.time_points - 1);

        auto res = hqst::decoherence::integrate_master_equation(w, coup.entries, spec, dec, grid);
        hqst::io::Series numeric{"numeric d=" + std::to_string(d), {}, {}};
        hqst::io::Series closed{"closed form d=" + std::to_string(d), {}, {}};
        for (const auto& p : res.trajectory) {
            const double cf = hqst::decoherence::target_population_closed(p.time, d, cfg.zeta, w0,
                                                                          1.0, dec);
            table.add_row({fmt(p.time * 1e9), fmt(p.ground_population()),
                           fmt(p.node_population(n - 1)), fmt(cf), fmt(p.trace_error()),
                           std::to_string(d)});
            numeric.x.push_back(p.time * 1e9);
            numeric.y.push_back(p.node_population(n - 1));
            closed.x.push_back(p.time * 1e9);
            closed.y.push_back(cf);
        }
        series.push_back(std::move(numeric));
        series.push_back(std::move(closed));
    }
    hqst::io::PlotOptions plot;
    plot.title = "Target-node population under decoherence";
    plot.x_label = "t (ns)";
    plot.y_label = "rho_bb";
    return emit(table, cfg, series, plot);
}

// -------------------------------------------------------------------- fig4

int cmd_fig4(const RunConfig& cfg) {
    hqst::io::Table table("hqst fig4",
                          {"delta_zeta", "d", "trials", "mean_fidelity", "std_error"});
    table.set_meta("omega_ghz", cfg.omega_ghz);
    table.set_meta("zeta", cfg.zeta);
    table.set_meta("relative_delta", cfg.relative_delta ? "true" : "false");
    stamp_common_meta(table, cfg);

    std::vector<double> deltas = cfg.delta_zeta;
    if (deltas.empty()) {
        for (int i = 0; i <= 8; ++i) deltas.push_back(cfg.relative_delta ? 0.1 * i : 0.1 * i * cfg.zeta * 0.999);
    }

    std::vector<hqst::io::Series> series;
    for (int d : cfg.d_list) {
        hqst::io::Series curve{"d=" + std::to_string(d), {}, {}};
        std::vector<std::pair<double, double>> fit_pts;
        for (double delta : deltas) {
            hqst::disorder::DisorderConfig dc;
            dc.d = d;
            dc.zeta = cfg.zeta;
            dc.omega0 = cfg.omega0();
            dc.delta_zeta = cfg.relative_delta ? delta * cfg.zeta : delta;
            dc.trials = cfg.trials > 0 ? cfg.trials : default_trials(d);
            dc.seed = cfg.seed;
            dc.threads = cfg.threads;
            auto res = hqst::disorder::average_fidelity(dc);
            table.add_row({fmt(dc.delta_zeta), std::to_string(d), std::to_string(dc.trials),
                           fmt(res.mean_fidelity), fmt(res.std_error)});
            curve.x.push_back(dc.delta_zeta);
            curve.y.push_back(res.mean_fidelity);
            if (dc.delta_zeta > 0.0 && res.mean_fidelity > 0.0) {
                fit_pts.emplace_back(dc.delta_zeta, res.mean_fidelity);
            }
        }
        if (fit_pts.size() >= 2) {
            const auto fit = hqst::disorder::fit_gaussian(fit_pts);
            table.add_comment("gaussian_fit d=" + std::to_string(d) +
                              ": amplitude=" + fmt(fit.amplitude) + " width=" + fmt(fit.width) +
                              " r_squared=" + fmt(fit.r_squared));
        }
        series.push_back(std::move(curve));
    }
    hqst::io::PlotOptions plot;
    plot.title = "Disordered-coupling transfer fidelity";
    plot.x_label = "delta zeta";
    plot.y_label = "mean F";
    return emit(table, cfg, series, plot);
}

// ------------------------------------------------------------------- bound

int cmd_bound(const RunConfig& cfg) {
    hqst::io::Table table("hqst bound",
                          {"d", "zeta", "omega_ghz", "t1_ns", "t2_ns", "transfer_time_ns",
                           "fixed_capacitor_time_ns", "fidelity_beta1", "f_avg", "lower_bound"});
    table.set_meta("tphi_ns", cfg.tphi_ns);
    if (cfg.wire_inductance_h && cfg.coupling_capacitance_f) {
        // Coupling-wire resonance as a design-margin diagnostic.
        const double w_lc = hqst::circuit::lc_mode_frequency(*cfg.wire_inductance_h,
                                                             *cfg.coupling_capacitance_f);
        table.set_meta("lc_mode_ghz", w_lc / (kTwoPi * 1e9));
        table.set_meta("lc_margin_ratio", w_lc / cfg.omega0());
    }
    stamp_common_meta(table, cfg);

    const auto dec = cfg.decoherence();
    const double w0 = cfg.omega0();
    const double t = hqst::dynamics::transfer_time(cfg.zeta, w0);
    for (int d : cfg.d_list) {
        const double f1 = hqst::decoherence::transfer_fidelity_decoherent(0.0, 1.0, d, cfg.zeta,
                                                                          w0, dec);
        const double favg = hqst::decoherence::average_fidelity(d, cfg.zeta, w0, dec);
        const double bound = hqst::decoherence::fidelity_lower_bound(t, dec.t1, dec.t2());
        const double tfixed = hqst::decoherence::transfer_time_fixed_capacitor(d, cfg.zeta, t);
        table.add_row({std::to_string(d), fmt(cfg.zeta), fmt(cfg.omega_ghz), fmt(cfg.t1_ns),
                       fmt(dec.t2() * 1e9), fmt(t * 1e9), fmt(tfixed * 1e9), fmt(f1), fmt(favg),
                       fmt(bound)});
    }
    return emit(table, cfg, {}, {});
}

// ----------------------------------------------------------------- program

int cmd_program(const RunConfig& cfg) {
    const int d = cfg.d_list.front();
    if (d > 12) {
        throw CLI::ValidationError("--d", "full-network simulation is capped at d <= 12");
    }
    auto parse_label = [&](const std::string& bits, const char* flag) {
        if (static_cast<int>(bits.size()) != d) {
            throw CLI::ValidationError(flag, "label must have exactly d bits");
        }
        std::uint32_t v = 0;
        for (char c : bits) {
            if (c != '0' && c != '1') throw CLI::ValidationError(flag, "label must be binary");
            v = (v << 1) | static_cast<std::uint32_t>(c - '0');
        }
        return hqst::topology::NodeLabel(d, v);
    };
    const auto a = parse_label(cfg.corner_a, "--a");
    const auto b = parse_label(cfg.corner_b, "--b");

    const double w0 = cfg.omega0();
    auto prog = hqst::dynamics::program_subcube(d, a, b, w0, cfg.zeta, cfg.detuning_factor,
                                                cfg.corrected);

    hqst::io::Table table("hqst program", {"node", "bits", "row", "inside", "frequency_ghz"});
    table.set_meta("d", static_cast<std::int64_t>(d));
    table.set_meta("a", a.to_string());
    table.set_meta("b", b.to_string());
    table.set_meta("zeta", cfg.zeta);
    table.set_meta("detuning_factor", cfg.detuning_factor);
    table.set_meta("row_corrected", cfg.corrected ? "true" : "false");
    stamp_common_meta(table, cfg);

    const auto& cube = prog.subcubes.front();
    for (Eigen::Index x = 0; x < prog.frequencies.size(); ++x) {
        hqst::topology::NodeLabel label(d, static_cast<std::uint32_t>(x));
        table.add_row({std::to_string(x), label.to_string(),
                       std::to_string(hqst::topology::hamming_row(label)),
                       cube.contains(label) ? "1" : "0",
                       fmt(prog.frequencies(x) / (kTwoPi * 1e9))});
    }

    // Simulated fidelity on the full network at the programmed transfer time.
    auto coup = hqst::circuit::coupling_matrix(prog.frequencies, cfg.zeta,
                                               hqst::topology::adjacency_sparse(d), cfg.order);
    auto heff = hqst::dynamics::EffectiveHamiltonian::node_space(d, prog.frequencies, coup,
                                                                 prog.base_frequency[0], cfg.zeta);
    double fidelity = 1.0;
    if (!(a == b)) {
        hqst::dynamics::TransferSpec spec(a, b, 0.0, 1.0);
        fidelity = hqst::dynamics::transfer_fidelity(heff, spec, prog.transfer_time[0]).fidelity;
    }
    table.add_comment("transfer_time_ns=" + fmt(prog.transfer_time[0] * 1e9));
    table.add_comment("simulated_fidelity=" + fmt(fidelity));
    table.add_comment("min_leaving_edge_margin_over_zeta_omega0=" +
                      fmt(cube.dimension() == d
                              ? std::numeric_limits<double>::infinity()
                              : hqst::dynamics::min_leaving_edge_margin(prog, d) /
                                    (cfg.zeta * w0)));
    return emit(table, cfg, {}, {});
}

// ---------------------------------------------------------------- disorder

int cmd_disorder(const RunConfig& cfg) {
    const int d = cfg.d_list.front();
    hqst::disorder::DisorderConfig dc;
    dc.d = d;
    dc.zeta = cfg.zeta;
    dc.omega0 = cfg.omega0();
    const double delta = cfg.delta_zeta.empty() ? 0.1 * cfg.zeta : cfg.delta_zeta.front();
    dc.delta_zeta = cfg.relative_delta ? delta * cfg.zeta : delta;
    dc.trials = cfg.trials > 0 ? cfg.trials : default_trials(d);
    dc.seed = cfg.seed;
    dc.threads = cfg.threads;
    auto res = hqst::disorder::average_fidelity(dc);

    if (cfg.dump_trials) {
        hqst::io::Table table("hqst disorder trials", {"trial", "fidelity"});
        table.set_meta("d", static_cast<std::int64_t>(d));
        table.set_meta("zeta", cfg.zeta);
        table.set_meta("delta_zeta", dc.delta_zeta);
        table.set_meta("trials", static_cast<std::int64_t>(dc.trials));
        table.set_meta("mean_fidelity", res.mean_fidelity);
        table.set_meta("std_error", res.std_error);
        stamp_common_meta(table, cfg);
        for (std::size_t i = 0; i < res.per_trial_fidelity.size(); ++i) {
            table.add_row({std::to_string(i), fmt(res.per_trial_fidelity[i])});
        }
        return emit(table, cfg, {}, {});
    }
    hqst::io::Table table("hqst disorder",
                          {"delta_zeta", "d", "trials", "mean_fidelity", "std_error"});
    table.set_meta("omega_ghz", cfg.omega_ghz);
    table.set_meta("zeta", cfg.zeta);
    stamp_common_meta(table, cfg);
    table.add_row({fmt(dc.delta_zeta), std::to_string(d), std::to_string(dc.trials),
                   fmt(res.mean_fidelity), fmt(res.std_error)});
    return emit(table, cfg, {}, {});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypercube state-transfer simulator"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;

    // Shared options registered on every subcommand.
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file (flags take precedence)");
        sub->add_option("--d", cfg.d_list, "hypercube dimension(s)");
        sub->add_option("--zeta", cfg.zeta, "dimensionless coupling");
        sub->add_option("--omega-ghz", cfg.omega_ghz, "qubit frequency in GHz (ordinary)");
        sub->add_option("--t1-ns", cfg.t1_ns, "energy-decay time in ns");
        sub->add_option("--tphi-ns", cfg.tphi_ns, "pure-dephasing time in ns");
        sub->add_option("--delta-zeta", cfg.delta_zeta, "disorder half-width(s)");
        sub->add_flag("--relative-delta", cfg.relative_delta,
                      "interpret --delta-zeta relative to zeta");
        sub->add_option("--trials", cfg.trials, "Monte Carlo trials (0 = per-d default)");
        sub->add_option("--seed", cfg.seed, "master seed");
        sub->add_option("--order", cfg.order, "coupling series truncation order");
        sub->add_flag("--corrected", cfg.corrected, "apply the quadratic row correction");
        sub->add_option("--threads", cfg.threads, "worker threads for trial sweeps");
        sub->add_option("--out", cfg.out, "output path (stdout when omitted)");
        sub->add_option("--format", cfg.format, "csv, json or svg")
            ->check(CLI::IsMember({"csv", "json", "svg"}));
        sub->add_flag("--no-timestamp", cfg.no_timestamp, "suppress the timestamp header line");
        return sub;
    };

    auto* topo = add_common(app.add_subcommand("topology", "adjacency and spectrum report"));
    auto* fig2 = add_common(app.add_subcommand("fig2", "transfer-error scaling sweep"));
    fig2->add_option("--zeta-min", cfg.zeta_min, "sweep start");
    fig2->add_option("--zeta-max", cfg.zeta_max, "sweep end");
    fig2->add_option("--zeta-points", cfg.zeta_points, "log-spaced sweep points");
    auto* fig3 = add_common(app.add_subcommand("fig3", "decoherent transfer trajectories"));
    fig3->add_option("--time-points", cfg.time_points, "output grid size over [0, 2T]");
    auto* fig4 = add_common(app.add_subcommand("fig4", "disorder ensemble sweep"));
    auto* bound = add_common(app.add_subcommand("bound", "decoherence fidelity bounds"));
    auto* program = add_common(app.add_subcommand("program", "subcube frequency programming"));
    program->add_option("--a", cfg.corner_a, "source corner as a bit string")->required();
    program->add_option("--b", cfg.corner_b, "target corner as a bit string")->required();
    program->add_option("--detuning-factor", cfg.detuning_factor,
                        "margin multiple of zeta omega0");
    auto* dis = add_common(app.add_subcommand("disorder", "single disorder ensemble"));
    dis->add_flag("--dump-trials", cfg.dump_trials, "emit per-trial fidelities");

    try {
        app.parse(argc, argv);
        CLI::App* sub = app.get_subcommands().front();
        if (!config_path.empty()) apply_config_file(*sub, cfg, config_path);

        if (cfg.d_list.empty()) throw CLI::ValidationError("--d", "at least one dimension");
        for (int d : cfg.d_list) {
            if (d < 1 || d > hqst::topology::kMaxDimension) {
                throw CLI::ValidationError("--d", "dimension out of range");
            }
        }
        if (cfg.zeta <= 0.0 || cfg.zeta * cfg.d_list.front() >= 1.0) {
            throw CLI::ValidationError("--zeta", "require 0 < zeta and zeta d < 1");
        }
        if (cfg.omega_ghz <= 0.0) throw CLI::ValidationError("--omega-ghz", "must be positive");
        if (cfg.threads < 1) throw CLI::ValidationError("--threads", "must be >= 1");

        if (sub == topo) return cmd_topology(cfg);
        if (sub == fig2) return cmd_fig2(cfg);
        if (sub == fig3) return cmd_fig3(cfg);
        if (sub == fig4) return cmd_fig4(cfg);
        if (sub == bound) return cmd_bound(cfg);
        if (sub == program) return cmd_program(cfg);
        if (sub == dis) return cmd_disorder(cfg);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
