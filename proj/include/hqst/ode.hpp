#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hqst::ode {

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_step = 0.0;   // 0 = choose automatically
    double min_step_fraction = 1e-12;  // of the total interval
    std::int64_t max_steps = 50'000'000;
};

struct Stats {
    std::int64_t steps_accepted = 0;
    std::int64_t steps_rejected = 0;
    std::int64_t rhs_evaluations = 0;
};

/// Thrown when the controller cannot meet the tolerance.
class StepSizeError : public std::runtime_error {
public:
    StepSizeError(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
    double time() const { return time_; }

private:
    double time_;
};

/// Dormand-Prince 5(4) with a PI step-size controller.  Integrates
/// y' = f(t, y) over complex state vectors, invoking `observe` at each
/// requested output time (steps land exactly on output times).
Stats integrate_dopri5(
    const std::function<void(double, const Eigen::VectorXcd&, Eigen::VectorXcd&)>& rhs,
    Eigen::VectorXcd& y, const std::vector<double>& output_times,
    const std::function<void(double, const Eigen::VectorXcd&)>& observe, const Options& opts = {});

/// Classical fixed-step fourth-order Runge-Kutta; `nsteps` uniform steps from
/// t0 to t1.  Retained as an independent cross-check path.
void integrate_rk4(const std::function<void(double, const Eigen::VectorXcd&, Eigen::VectorXcd&)>& rhs,
                   Eigen::VectorXcd& y, double t0, double t1, std::int64_t nsteps);

}  // namespace hqst::ode
