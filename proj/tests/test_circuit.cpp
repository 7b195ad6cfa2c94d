#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hqst/circuit.hpp"
#include "hqst/topology.hpp"
#include "support/oracles.hpp"

using namespace hqst;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

circuit::CircuitParams fig1_params(int d) {
    circuit::CircuitParams p;
    p.junction_capacitance = 6e-12;
    p.coupling_capacitance = 60e-15;
    p.critical_current = 21e-6;
    p.dimension = d;
    return p;
}
}  // namespace

TEST_CASE("coupling parameter") {
    CHECK(circuit::coupling_parameter(fig1_params(4)) == doctest::Approx(60.0 / 6240.0).epsilon(1e-14));

    auto p = fig1_params(1);
    p.coupling_capacitance = 30e-15;
    CHECK(circuit::coupling_parameter(p) == doctest::Approx(30.0 / 6030.0).epsilon(1e-14));

    p.coupling_capacitance = 0.0;
    CHECK(circuit::coupling_parameter(p) == 0.0);

    p.junction_capacitance = -1.0;
    CHECK_THROWS_AS(circuit::coupling_parameter(p), std::invalid_argument);
}

TEST_CASE("capacitance matrix") {
    SUBCASE("no edges: C * identity") {
        auto p = fig1_params(2);
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
        Eigen::MatrixXd c = circuit::capacitance_matrix(p, a);
        CHECK((c - p.total_capacitance() * Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() ==
              0.0);
    }
    SUBCASE("d=1 explicit") {
        auto p = fig1_params(1);
        const double zeta = circuit::coupling_parameter(p);
        const double c = p.total_capacitance();
        Eigen::MatrixXd m = circuit::capacitance_matrix(p, topology::adjacency_matrix(1));
        CHECK(m(0, 0) == doctest::Approx(c));
        CHECK(m(0, 1) == doctest::Approx(-zeta * c));
        CHECK(m(1, 0) == doctest::Approx(-zeta * c));
    }
    SUBCASE("d=3 spectrum stays positive") {
        auto p = fig1_params(3);
        const double zeta = circuit::coupling_parameter(p);
        const double c = p.total_capacitance();
        Eigen::MatrixXd m = circuit::capacitance_matrix(p, topology::adjacency_matrix(3));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
        // Adjacency spectrum is {+-1, +-3}; smallest capacitance eigenvalue C(1 - 3 zeta).
        CHECK(es.eigenvalues().minCoeff() == doctest::Approx(c * (1 - 3 * zeta)).epsilon(1e-12));
        CHECK(es.eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("qubit frequency") {
    // Zero-bias plasma frequency at the d=4 network capacitance 6.24 pF.
    const double inv_diag = 1.0 / 6.24e-12;
    const double w = circuit::qubit_frequency(21e-6, 0.0, inv_diag);
    CHECK(w / kTwoPi == doctest::Approx(1.60942e10).epsilon(1e-4));

    SUBCASE("frequency collapses at the critical current") {
        const double w9 = circuit::qubit_frequency(21e-6, 0.999999 * 21e-6, inv_diag);
        CHECK(w9 < 0.04 * w);
        CHECK_THROWS_AS(circuit::qubit_frequency(21e-6, 21e-6, inv_diag), std::domain_error);
        CHECK_THROWS_AS(circuit::qubit_frequency(21e-6, 22e-6, inv_diag), std::domain_error);
    }
    SUBCASE("bias ratio reaching 6 GHz") {
        const double r = circuit::bias_ratio_for_frequency(kTwoPi * 6e9, w);
        CHECK(r == doctest::Approx(0.99030).epsilon(1e-4));
        // Round trip.
        CHECK(circuit::qubit_frequency(21e-6, r * 21e-6, inv_diag) / kTwoPi ==
              doctest::Approx(6e9).epsilon(1e-12));
    }
}

TEST_CASE("inverse capacitance diagonal is uniform across nodes") {
    for (int d : {1, 2, 3, 6, 8, 10}) {
        auto p = fig1_params(d);
        Eigen::MatrixXd cm = circuit::capacitance_matrix(p, topology::adjacency_matrix(std::min(d, 10)));
        Eigen::MatrixXd inv = cm.inverse();
        const double ref = inv(0, 0);
        for (Eigen::Index i = 0; i < inv.rows(); ++i) {
            CHECK(std::abs(inv(i, i) - ref) <= 1e-12 * std::abs(ref));
        }
        CHECK(circuit::inverse_capacitance_diagonal(p) == doctest::Approx(ref).epsilon(1e-12));
    }
    // The symmetric shortcut used past d=10 agrees with exact inversion at d=10.
    auto p10 = fig1_params(10);
    const double exact = circuit::inverse_capacitance_diagonal(p10);
    auto p_shortcut = p10;
    p_shortcut.dimension = 10;
    // Exercise the series path by comparing a d=11 value against a dense inverse.
    auto p11 = fig1_params(11);
    const double series11 = circuit::inverse_capacitance_diagonal(p11);
    Eigen::MatrixXd a11 = Eigen::MatrixXd(topology::adjacency_sparse(11));
    const double zeta11 = circuit::coupling_parameter(p11);
    Eigen::MatrixXd cm11 = p11.total_capacitance() *
                           (Eigen::MatrixXd::Identity(2048, 2048) - zeta11 * a11);
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(2048);
    e0(0) = 1.0;
    const double dense11 = cm11.ldlt().solve(e0)(0);
    CHECK(series11 == doctest::Approx(dense11).epsilon(1e-11));
    CHECK(exact > 0.0);
}

TEST_CASE("coupling matrix") {
    const double w0 = kTwoPi * 6e9;

    SUBCASE("order 1 uniform: (zeta w0 / 2) A") {
        for (int d : {1, 3, 5}) {
            const double zeta = 0.01;
            const Eigen::VectorXd w = Eigen::VectorXd::Constant(1 << d, w0);
            auto om = circuit::coupling_matrix(w, zeta, topology::adjacency_sparse(d), 1);
            Eigen::MatrixXd want = 0.5 * zeta * w0 * topology::adjacency_matrix(d);
            CHECK((om.dense() - want).cwiseAbs().maxCoeff() <= 1e-9 * w0 * zeta);
            CHECK(om.dense().diagonal().cwiseAbs().maxCoeff() == 0.0);
        }
    }
    SUBCASE("d=1 order 2 has the zeta^2 w0/2 diagonal") {
        const double zeta = 0.02;
        const Eigen::VectorXd w = Eigen::VectorXd::Constant(2, w0);
        auto om = circuit::coupling_matrix(w, zeta, topology::adjacency_sparse(1), 2);
        CHECK(om.dense()(0, 0) == doctest::Approx(0.5 * zeta * zeta * w0).epsilon(1e-12));
        CHECK(om.dense()(1, 1) == doctest::Approx(0.5 * zeta * zeta * w0).epsilon(1e-12));
    }
    SUBCASE("truncations converge to the exact resummation") {
        const int d = 3;
        const double zeta = 0.01;
        Eigen::MatrixXd a = topology::adjacency_matrix(d);
        const Eigen::VectorXd w = Eigen::VectorXd::Constant(8, w0);
        Eigen::MatrixXd exact = circuit::coupling_matrix_exact_uniform(w0, zeta, a);
        double prev = 1e300;
        for (int order : {1, 2, 3, 4, 6, 8}) {
            auto om = circuit::coupling_matrix(w, zeta, topology::adjacency_sparse(d), order);
            const double err = (om.dense() - exact).cwiseAbs().maxCoeff();
            CHECK(err < prev + 1e-18);
            prev = err;
        }
        CHECK(prev <= 1e-10 * 0.5 * zeta * w0);
    }
    SUBCASE("doubling the order shrinks the discrepancy by at least (zeta d)^2") {
        // Residual at order n is O((zeta d)^(n+1)), so doubling gains a factor
        // (zeta d)^n; the quadratic guarantee applies from n = 2 up.
        const int d = 4;
        const double zeta = 0.02;  // zeta d = 0.08 <= 0.1
        Eigen::MatrixXd a = topology::adjacency_matrix(d);
        const Eigen::VectorXd w = Eigen::VectorXd::Constant(1 << d, w0);
        Eigen::MatrixXd exact = circuit::coupling_matrix_exact_uniform(w0, zeta, a);
        for (int order : {2, 3}) {
            auto lo = circuit::coupling_matrix(w, zeta, topology::adjacency_sparse(d), order);
            auto hi = circuit::coupling_matrix(w, zeta, topology::adjacency_sparse(d), 2 * order);
            const double err_lo = (lo.dense() - exact).cwiseAbs().maxCoeff();
            const double err_hi = (hi.dense() - exact).cwiseAbs().maxCoeff();
            CHECK(err_hi <= err_lo * std::pow(zeta * d, 2));
        }
    }
    SUBCASE("symmetric for non-uniform frequencies; matches dense oracle") {
        const int d = 3;
        Eigen::VectorXd w(8);
        for (int i = 0; i < 8; ++i) w(i) = w0 * (1.0 + 0.01 * oracles::grid_value(i, -1.0, 1.0));
        auto om = circuit::coupling_matrix(w, 0.015, topology::adjacency_sparse(d), 3);
        Eigen::MatrixXd dense = om.dense();
        CHECK((dense - dense.transpose()).cwiseAbs().maxCoeff() <= 1e-9);
        Eigen::MatrixXd want = oracles::brute_coupling(w, 0.015, topology::adjacency_matrix(d), 3);
        CHECK((dense - want).cwiseAbs().maxCoeff() <= 1e-9 * w0 * 0.015);
    }
    SUBCASE("divergent regime rejected") {
        const Eigen::VectorXd w = Eigen::VectorXd::Constant(16, w0);
        CHECK_THROWS_AS(circuit::coupling_matrix(w, 0.26, topology::adjacency_sparse(4), 3),
                        std::domain_error);
    }
}

TEST_CASE("lc mode frequency") {
    CHECK(circuit::lc_mode_frequency(2e-9, 30e-15) / kTwoPi ==
          doctest::Approx(2.0547e10).epsilon(1e-4));
    CHECK(circuit::lc_mode_frequency(2e-9, 30e-15) / kTwoPi > 2.0e10);
    CHECK(circuit::lc_mode_frequency(2e-9, 60e-15) / kTwoPi ==
          doctest::Approx(1.45277e10).epsilon(1e-4));
    // Quadrupling L halves the mode frequency.
    CHECK(circuit::lc_mode_frequency(8e-9, 30e-15) ==
          doctest::Approx(0.5 * circuit::lc_mode_frequency(2e-9, 30e-15)).epsilon(1e-12));
    CHECK_THROWS_AS(circuit::lc_mode_frequency(0.0, 30e-15), std::invalid_argument);
}
