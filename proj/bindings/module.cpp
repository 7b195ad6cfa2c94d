// Python bindings for the main simulation operations.
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hqst/circuit.hpp"
#include "hqst/decoherence.hpp"
#include "hqst/disorder.hpp"
#include "hqst/dynamics.hpp"
#include "hqst/io.hpp"
#include "hqst/oracle.hpp"
#include "hqst/topology.hpp"

namespace py = pybind11;
using namespace hqst;

namespace {

dynamics::TransferSpec make_spec(int d, std::uint32_t a, std::uint32_t b,
                                 std::complex<double> alpha, std::complex<double> beta) {
    return dynamics::TransferSpec(topology::NodeLabel(d, a), topology::NodeLabel(d, b), alpha,
                                  beta);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hypercube quantum state transfer simulator";
    m.attr("__version__") = io::kVersion;

    // ---------------------------------------------------------- topology
    m.def("adjacency_matrix", &topology::adjacency_matrix, py::arg("d"),
          "Dense hypercube adjacency matrix (2^d x 2^d).");
    m.def("bit_flip_matrix", &topology::bit_flip_matrix, py::arg("d"), py::arg("j"),
          "Tensor factor flipping bit j (1-based, most significant first).");
    m.def(
        "hamming_row",
        [](int d, std::uint32_t value) { return topology::NodeLabel(d, value).hamming_row(); },
        py::arg("d"), py::arg("value"));
    m.def("edge_count", &topology::edge_count, py::arg("d"));
    m.def(
        "subcube_nodes",
        [](int d, std::uint32_t a, std::uint32_t b) {
            std::vector<std::uint32_t> out;
            for (const auto& n :
                 topology::subcube_between(topology::NodeLabel(d, a), topology::NodeLabel(d, b))
                     .nodes()) {
                out.push_back(n.value());
            }
            return out;
        },
        py::arg("d"), py::arg("a"), py::arg("b"),
        "Member labels of the minimal subcube spanned by corners a and b.");

    // ----------------------------------------------------------- circuit
    m.def(
        "coupling_parameter",
        [](double cx, double cc, int d) {
            circuit::CircuitParams p;
            p.junction_capacitance = cx;
            p.coupling_capacitance = cc;
            p.critical_current = 1e-6;
            p.dimension = d;
            return circuit::coupling_parameter(p);
        },
        py::arg("junction_capacitance"), py::arg("coupling_capacitance"), py::arg("d"),
        "zeta = C_c / (C_x + d C_c).");
    m.def("qubit_frequency", &circuit::qubit_frequency, py::arg("critical_current"),
          py::arg("bias_current"), py::arg("inv_cap_diag"),
          "Junction transition frequency in rad/s.");
    m.def("lc_mode_frequency", &circuit::lc_mode_frequency, py::arg("inductance"),
          py::arg("coupling_capacitance"));
    m.def(
        "coupling_matrix",
        [](const Eigen::VectorXd& omega, double zeta, int d, int order) {
            return circuit::coupling_matrix(omega, zeta, topology::adjacency_sparse(d), order)
                .dense();
        },
        py::arg("omega"), py::arg("zeta"), py::arg("d"),
        py::arg("order") = circuit::kDefaultCouplingOrder,
        "Dense coupling matrix (rad/s) on the hypercube of dimension d.");

    // ---------------------------------------------------------- dynamics
    m.def("transfer_time", &dynamics::transfer_time, py::arg("zeta"), py::arg("omega0"));
    m.def("corner_amplitude", &dynamics::corner_amplitude, py::arg("d"), py::arg("zeta"),
          py::arg("omega0"), py::arg("t"),
          "Closed-form corner-to-corner amplitude of the ideal model.");
    m.def("corrected_frequencies", &dynamics::corrected_frequencies, py::arg("d"),
          py::arg("omega0"), py::arg("zeta"));
    m.def("predicted_transfer_error", &dynamics::predicted_transfer_error, py::arg("d"),
          py::arg("zeta"), py::arg("corrected"));
    m.def("transfer_error", &dynamics::column_space_transfer_error, py::arg("d"), py::arg("zeta"),
          py::arg("omega0"), py::arg("order") = circuit::kDefaultCouplingOrder,
          py::arg("corrected") = false, py::arg("calibrated") = true,
          "Corner-to-corner error 1 - F on the (d+1)-dimensional row basis.");
    m.def(
        "transfer_fidelity",
        [](int d, double zeta, double omega0, std::uint32_t a, std::uint32_t b,
           std::complex<double> alpha, std::complex<double> beta, double t, int order,
           py::object frequencies) {
            const Eigen::Index n = Eigen::Index{1} << d;
            Eigen::VectorXd w = frequencies.is_none()
                                    ? Eigen::VectorXd::Constant(n, omega0)
                                    : frequencies.cast<Eigen::VectorXd>();
            auto coup = circuit::coupling_matrix(w, zeta, topology::adjacency_sparse(d), order);
            auto h = dynamics::EffectiveHamiltonian::node_space(d, w, coup, omega0, zeta);
            return dynamics::transfer_fidelity(h, make_spec(d, a, b, alpha, beta), t).fidelity;
        },
        py::arg("d"), py::arg("zeta"), py::arg("omega0"), py::arg("a"), py::arg("b"),
        py::arg("alpha"), py::arg("beta"), py::arg("t"),
        py::arg("order") = circuit::kDefaultCouplingOrder, py::arg("frequencies") = py::none(),
        "Node-space transfer fidelity at time t.");
    m.def(
        "program_subcube",
        [](int d, std::uint32_t a, std::uint32_t b, double omega0, double zeta,
           double detuning_factor, bool row_corrected) {
            auto prog = dynamics::program_subcube(d, topology::NodeLabel(d, a),
                                                  topology::NodeLabel(d, b), omega0, zeta,
                                                  detuning_factor, row_corrected);
            return py::make_tuple(prog.frequencies, prog.base_frequency[0],
                                  prog.transfer_time[0]);
        },
        py::arg("d"), py::arg("a"), py::arg("b"), py::arg("omega0"), py::arg("zeta"),
        py::arg("detuning_factor") = dynamics::kDefaultDetuningFactor,
        py::arg("row_corrected") = false,
        "Per-node frequency program; returns (frequencies, base, transfer_time).");

    // ------------------------------------------------------- decoherence
    py::class_<decoherence::DecoherenceParams>(m, "DecoherenceParams")
        .def(py::init([](double t1, double t_phi) {
                 decoherence::DecoherenceParams p{t1, t_phi};
                 p.validate();
                 return p;
             }),
             py::arg("t1"), py::arg("t_phi"))
        .def_readonly("t1", &decoherence::DecoherenceParams::t1)
        .def_readonly("t_phi", &decoherence::DecoherenceParams::t_phi)
        .def("t2", &decoherence::DecoherenceParams::t2);

    m.def("dephasing_rate", &decoherence::dephasing_rate, py::arg("p"), py::arg("n"), py::arg("d"),
          py::arg("t_phi"));
    m.def("dephasing_mode_weight", &decoherence::dephasing_mode_weight, py::arg("n"), py::arg("t"),
          py::arg("d"), py::arg("t_phi"));
    m.def("target_population_closed", &decoherence::target_population_closed, py::arg("t"),
          py::arg("d"), py::arg("zeta"), py::arg("omega0"), py::arg("beta"), py::arg("dec"),
          "Closed-form rho_bb(t) under decoherence.");
    m.def(
        "integrate_target_population",
        [](int d, double zeta, double omega0, const decoherence::DecoherenceParams& dec,
           const std::vector<double>& t_grid) {
            const Eigen::Index n = Eigen::Index{1} << d;
            const Eigen::VectorXd w = Eigen::VectorXd::Constant(n, omega0);
            auto coup = circuit::coupling_matrix(w, zeta, topology::adjacency_sparse(d), 1);
            auto res = decoherence::integrate_master_equation(
                w, coup.entries, make_spec(d, 0, (1u << d) - 1, 0.0, 1.0), dec, t_grid);
            std::vector<double> out;
            out.reserve(res.trajectory.size());
            for (const auto& p : res.trajectory) out.push_back(p.node_population(n - 1));
            return out;
        },
        py::arg("d"), py::arg("zeta"), py::arg("omega0"), py::arg("dec"), py::arg("t_grid"),
        "Master-equation rho_bb trajectory for the corner-to-corner protocol.");
    m.def("transfer_fidelity_decoherent", &decoherence::transfer_fidelity_decoherent,
          py::arg("alpha"), py::arg("beta"), py::arg("d"), py::arg("zeta"), py::arg("omega0"),
          py::arg("dec"));
    m.def("average_fidelity", &decoherence::average_fidelity, py::arg("d"), py::arg("zeta"),
          py::arg("omega0"), py::arg("dec"));
    m.def("fidelity_lower_bound", &decoherence::fidelity_lower_bound, py::arg("transfer_time"),
          py::arg("t1"), py::arg("t2"));
    m.def("transfer_time_fixed_capacitor", &decoherence::transfer_time_fixed_capacitor,
          py::arg("d"), py::arg("zeta"), py::arg("t_at_d1"));

    // ---------------------------------------------------------- disorder
    m.def(
        "disorder_average_fidelity",
        [](int d, double zeta, double omega0, double delta_zeta, int trials, std::uint64_t seed,
           int threads) {
            disorder::DisorderConfig cfg;
            cfg.d = d;
            cfg.zeta = zeta;
            cfg.omega0 = omega0;
            cfg.delta_zeta = delta_zeta;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.threads = threads;
            auto res = disorder::average_fidelity(cfg);
            return py::make_tuple(res.mean_fidelity, res.std_error, res.per_trial_fidelity);
        },
        py::arg("d"), py::arg("zeta"), py::arg("omega0"), py::arg("delta_zeta"),
        py::arg("trials"), py::arg("seed") = 1, py::arg("threads") = 1,
        "Disordered-coupling ensemble; returns (mean, std_error, per_trial).");
    m.def(
        "fit_localization",
        [](const std::vector<std::pair<int, double>>& pts) {
            auto fit = disorder::fit_localization(pts);
            return py::make_tuple(fit.length, fit.intercept, fit.r_squared);
        },
        py::arg("mean_fidelity_by_d"), "Fit of ln(mean F) vs d; returns (length, intercept, R^2).");

    // ------------------------------------------------------------ oracle
    m.def(
        "oracle_transfer_fidelity",
        [](int d, double zeta, double omega0, std::complex<double> alpha,
           std::complex<double> beta, double t, int order) {
            const Eigen::Index n = Eigen::Index{1} << d;
            const Eigen::VectorXd w = Eigen::VectorXd::Constant(n, omega0);
            auto coup = circuit::coupling_matrix(w, zeta, topology::adjacency_sparse(d), order);
            return oracle::transfer_fidelity(d, w, coup.dense(),
                                             make_spec(d, 0, (1u << d) - 1, alpha, beta), omega0,
                                             zeta, t);
        },
        py::arg("d"), py::arg("zeta"), py::arg("omega0"), py::arg("alpha"), py::arg("beta"),
        py::arg("t"), py::arg("order") = circuit::kDefaultCouplingOrder,
        "Corner-to-corner fidelity evolved in the full 2^(2^d) qubit space (d <= 3).");
}
