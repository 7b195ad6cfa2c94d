#include "hqst/ode.hpp"

#include <algorithm>
#include <cmath>

namespace hqst::ode {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// 5th-order minus embedded 4th-order weights (error estimator).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

double error_norm(const Eigen::VectorXcd& err, const Eigen::VectorXcd& y0,
                  const Eigen::VectorXcd& y1, double atol, double rtol) {
    double acc = 0.0;
    const Eigen::Index n = err.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double scale = atol + rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
        const double q = std::abs(err(i)) / scale;
        acc += q * q;
    }
    return std::sqrt(acc / static_cast<double>(n));
}

}  // namespace

Stats integrate_dopri5(
    const std::function<void(double, const Eigen::VectorXcd&, Eigen::VectorXcd&)>& rhs,
    Eigen::VectorXcd& y, const std::vector<double>& output_times,
    const std::function<void(double, const Eigen::VectorXcd&)>& observe, const Options& opts) {
    Stats stats;
    if (output_times.empty()) return stats;

    const Eigen::Index n = y.size();
    Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);

    double t = 0.0;
    std::size_t next_out = 0;
    // Emit any leading output at t = 0.
    while (next_out < output_times.size() && output_times[next_out] <= t) {
        observe(output_times[next_out], y);
        ++next_out;
    }
    if (next_out >= output_times.size()) return stats;

    const double t_end = output_times.back();
    const double span = t_end - t;
    if (span <= 0.0) return stats;

    rhs(t, y, k1);
    ++stats.rhs_evaluations;

    double h = opts.initial_step;
    if (h <= 0.0) {
        // Crude starter: limit the first-step state change to ~tolerance^(1/5).
        const double ynorm = y.norm();
        const double dnorm = k1.norm();
        h = (dnorm > 0.0) ? 0.01 * std::max(ynorm, 1e-30) / dnorm : span / 100.0;
        h = std::min(h, span / 10.0);
    }

    const double h_min = span * opts.min_step_fraction;
    double prev_error = 1.0;  // PI controller memory

    while (next_out < output_times.size()) {
        if (stats.steps_accepted + stats.steps_rejected > opts.max_steps) {
            throw StepSizeError("step budget exhausted", t);
        }
        bool hit_output = false;
        double h_step = h;
        if (t + h_step >= output_times[next_out] - 1e-14 * span) {
            h_step = output_times[next_out] - t;
            hit_output = true;
        }
        if (h_step < h_min && !hit_output) {
            throw StepSizeError("step size underflow (tolerance not met)", t);
        }

        ytmp = y + h_step * (a21 * k1);
        rhs(t + c2 * h_step, ytmp, k2);
        ytmp = y + h_step * (a31 * k1 + a32 * k2);
        rhs(t + c3 * h_step, ytmp, k3);
        ytmp = y + h_step * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * h_step, ytmp, k4);
        ytmp = y + h_step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * h_step, ytmp, k5);
        ytmp = y + h_step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + h_step, ytmp, k6);
        ynew = y + h_step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + h_step, ynew, k7);
        stats.rhs_evaluations += 6;

        err = h_step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double enorm = error_norm(err, y, ynew, opts.abs_tol, opts.rel_tol);

        if (enorm <= 1.0) {
            t += h_step;
            y.swap(ynew);
            k1.swap(k7);  // FSAL
            ++stats.steps_accepted;
            if (hit_output) {
                observe(t, y);
                ++next_out;
                // Collapse any duplicate output times.
                while (next_out < output_times.size() &&
                       output_times[next_out] <= t + 1e-14 * span) {
                    observe(output_times[next_out], y);
                    ++next_out;
                }
            }
            // PI controller (order 5); on output-truncated steps the
            // controller step is kept, not the truncated one.
            const double safe = 0.9;
            double factor = safe * std::pow(std::max(enorm, 1e-10), -0.7 / 5.0) *
                            std::pow(std::max(prev_error, 1e-10), 0.4 / 5.0);
            factor = std::clamp(factor, 0.2, 6.0);
            if (!hit_output) {
                h = h_step * factor;
            } else if (factor < 1.0) {
                h *= factor;
            }
            prev_error = std::max(enorm, 1e-10);
        } else {
            ++stats.steps_rejected;
            const double factor = std::clamp(0.9 * std::pow(enorm, -1.0 / 5.0), 0.1, 0.9);
            h = h_step * factor;
        }
    }
    return stats;
}

void integrate_rk4(const std::function<void(double, const Eigen::VectorXcd&, Eigen::VectorXcd&)>& rhs,
                   Eigen::VectorXcd& y, double t0, double t1, std::int64_t nsteps) {
    const double h = (t1 - t0) / static_cast<double>(nsteps);
    const Eigen::Index n = y.size();
    Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n), ytmp(n);
    double t = t0;
    for (std::int64_t i = 0; i < nsteps; ++i) {
        rhs(t, y, k1);
        ytmp = y + (0.5 * h) * k1;
        rhs(t + 0.5 * h, ytmp, k2);
        ytmp = y + (0.5 * h) * k2;
        rhs(t + 0.5 * h, ytmp, k3);
        ytmp = y + h * k3;
        rhs(t + h, ytmp, k4);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = t0 + (i + 1) * h;
    }
}

}  // namespace hqst::ode
