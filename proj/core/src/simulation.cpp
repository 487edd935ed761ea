#include "hydroboost/simulation.hpp"

#include <algorithm>
#include <cmath>

namespace hydroboost {

ControlProgram::ControlProgram(double dt, std::vector<ControlSample> samples) : dt_(dt), samples_(std::move(samples)) {
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw ParameterError("control program: dt must be positive");
    for (const auto& s : samples_)
        if (!std::isfinite(s.thrust) || !std::isfinite(s.deflection))
            throw ParameterError("control program: samples must be finite");
}

ControlProgram ControlProgram::constant(double dt, double duration, ControlSample value) {
    const long intervals = std::lround(duration / dt);
    if (intervals < 1 || std::abs(intervals * dt - duration) > 1e-9 * std::max(1.0, duration))
        throw ParameterError("control program: duration must be a positive multiple of dt");
    return ControlProgram(dt, std::vector<ControlSample>(static_cast<std::size_t>(intervals) + 1, value));
}

ControlSample ControlProgram::at(double t, Interpolation mode) const {
    if (samples_.empty()) return {};
    if (t <= 0.0) return samples_.front();
    const double pos = t / dt_;
    const double k = std::floor(pos);
    if (k >= static_cast<double>(samples_.size() - 1)) return samples_.back();
    return at_interval(static_cast<std::size_t>(k), pos - k, mode);
}

void IntegratorConfig::validate(double control_dt) const {
    if (!(step > 0.0) || !std::isfinite(step)) throw ParameterError("integrator step must be positive");
    const double ratio = control_dt / step;
    if (ratio < 1.0 - 1e-9 || std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
        throw ParameterError("integrator step must divide the control interval");
}

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::surface_crossing: return "surface_crossing";
        case EventKind::final_time: return "final_time";
    }
    return "unknown";
}

namespace detail {

int step_count(double t_final, double step) {
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ParameterError("final time must be non-negative");
    const long n = std::lround(t_final / step);
    if (std::abs(n * step - t_final) > 1e-9 * std::max(1.0, t_final))
        throw ParameterError("final time must be a whole number of integrator steps");
    return static_cast<int>(n);
}

}  // namespace detail

Trajectory<LongitudinalState> simulate_launch(const VehicleModel& model, const LongitudinalState& x0,
                                              const ControlProgram& program, double t_final,
                                              const IntegratorConfig& config, bool stop_at_surface) {
    auto f = [&model](const LongitudinalState& x, const ControlSample& c) {
        return launch_derivative(x, c.thrust, model);
    };
    if (stop_at_surface) return simulate_to_surface(f, x0, program, t_final, config);
    return integrate(f, x0, program, t_final, config);
}

Trajectory<LongitudinalState> simulate_boost(const VehicleModel& model, const LongitudinalState& x0,
                                             const ControlProgram& program, double t_final,
                                             const IntegratorConfig& config) {
    auto f = [&model](const LongitudinalState& x, const ControlSample& c) {
        return boost_derivative(x, {c.thrust, c.deflection}, model);
    };
    return integrate(f, x0, program, t_final, config);
}

Trajectory<BodyState6DOF> simulate_six_dof(const VehicleModel& model, const BodyState6DOF& x0,
                                           const ControlProgram& program, double t_final,
                                           const IntegratorConfig& config, const SixDofOptions& options,
                                           bool stop_at_surface) {
    auto f = [&model, &options](const BodyState6DOF& x, const ControlSample& c) {
        return six_dof_derivative(x, {c.thrust, c.deflection, 0.0}, model, options);
    };
    if (stop_at_surface) return simulate_to_surface(f, x0, program, t_final, config);
    return integrate(f, x0, program, t_final, config);
}

Trajectory<LongitudinalState> project(const Trajectory<BodyState6DOF>& traj) {
    Trajectory<LongitudinalState> out;
    out.times = traj.times;
    out.controls = traj.controls;
    out.events = traj.events;
    out.states.reserve(traj.states.size());
    for (const auto& s : traj.states) out.states.push_back(project(s));
    return out;
}

}  // namespace hydroboost
