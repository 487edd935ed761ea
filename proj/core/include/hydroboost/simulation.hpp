#pragma once

#include <cmath>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "hydroboost/error.hpp"
#include "hydroboost/phase_models.hpp"

namespace hydroboost {

/// One control sample: thrust [N] and pitch deflection [rad] (zero in the launch phase).
struct ControlSample {
    double thrust = 0.0;
    double deflection = 0.0;

    friend bool operator==(const ControlSample&, const ControlSample&) = default;
};

enum class Interpolation { linear, zero_order_hold };

/**
 * @brief Control samples at t = k * dt, k = 0..N.
 *
 * Between samples the program is interpolated; past the last sample the
 * last value is held. An empty program evaluates to zero.
 */
class ControlProgram {
public:
    ControlProgram() = default;
    ControlProgram(double dt, std::vector<ControlSample> samples);

    /// Same thrust value at every sample of [0, duration].
    static ControlProgram constant(double dt, double duration, ControlSample value);

    double dt() const { return dt_; }
    const std::vector<ControlSample>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }
    double duration() const { return samples_.empty() ? 0.0 : dt_ * static_cast<double>(samples_.size() - 1); }

    /// Value inside interval `k` at fraction `frac` in [0, 1].
    ControlSample at_interval(std::size_t k, double frac, Interpolation mode) const {
        if (samples_.empty()) return {};
        const std::size_t last = samples_.size() - 1;
        if (k >= last) return samples_[last];
        const ControlSample& a = samples_[k];
        if (mode == Interpolation::zero_order_hold || frac <= 0.0) return a;
        const ControlSample& b = samples_[k + 1];
        return {a.thrust + frac * (b.thrust - a.thrust), a.deflection + frac * (b.deflection - a.deflection)};
    }

    ControlSample at(double t, Interpolation mode = Interpolation::linear) const;

private:
    double dt_ = 0.2;
    std::vector<ControlSample> samples_;
};

/// Fixed-step classical RK4.
struct IntegratorConfig {
    double step = 0.02;  ///< [s]
    Interpolation interpolation = Interpolation::linear;

    /// Throws ParameterError unless step > 0 and step divides `control_dt`.
    void validate(double control_dt) const;

    /// Integrator steps per control interval.
    int substeps(double control_dt) const { return static_cast<int>(std::lround(control_dt / step)); }
};

enum class EventKind { surface_crossing, final_time };

struct Event {
    double time = 0.0;
    EventKind kind = EventKind::final_time;
};

const char* to_string(EventKind kind);

template <class State>
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<ControlSample> controls;
    std::vector<Event> events;

    bool empty() const { return times.empty(); }
    const State& final_state() const { return states.back(); }
    double final_time() const { return times.back(); }
};

/// Depth (positive down) of a state, used by the surface event.
inline double depth_of(const LongitudinalState& x) { return x.z; }
inline double depth_of(const BodyState6DOF& x) { return x.down; }
inline double depth_of(double z) { return z; }

/// One RK4 step of x' = f(x, c), with controls at the start, midpoint and end of the step.
template <class State, class F>
State rk4_step(F& f, const State& x, double h, const ControlSample& c0, const ControlSample& c_mid,
               const ControlSample& c1) {
    const State k1 = f(x, c0);
    const State k2 = f(x + (0.5 * h) * k1, c_mid);
    const State k3 = f(x + (0.5 * h) * k2, c_mid);
    const State k4 = f(x + h * k3, c1);
    return x + (h / 6.0) * (k1 + (2.0 * k2) + (2.0 * k3) + k4);
}

namespace detail {

int step_count(double t_final, double step);

template <class T>
bool finite_state(const T&) {
    return true;
}
inline bool finite_state(double x) { return std::isfinite(x); }
inline bool finite_state(const LongitudinalState& x) {
    return std::isfinite(x.u) && std::isfinite(x.w) && std::isfinite(x.q) && std::isfinite(x.theta) &&
           std::isfinite(x.z);
}
inline bool finite_state(const BodyState6DOF& x) { return x.as_vector().allFinite(); }

// Fixed-step march. `stop(traj, step)` runs after the initial point
// (step = -1) and after every step; returning true ends the run.
template <class State, class F, class Stop>
Trajectory<State> march(F&& f, const State& x0, const ControlProgram& program, double t_final,
                        const IntegratorConfig& config, Stop&& stop) {
    const double h = config.step;
    const double control_dt = program.empty() ? h : program.dt();
    if (!program.empty()) config.validate(control_dt);
    else if (!(h > 0.0)) throw ParameterError("integrator step must be positive");
    const int per_interval = program.empty() ? 1 : config.substeps(control_dt);
    const int n = step_count(t_final, h);
    const Interpolation mode = config.interpolation;

    auto control = [&](int i, double stage) {
        const auto k = static_cast<std::size_t>(i / per_interval);
        const double frac = (static_cast<double>(i % per_interval) + stage) / per_interval;
        return program.at_interval(k, frac, mode);
    };

    Trajectory<State> traj;
    traj.times.reserve(static_cast<std::size_t>(n) + 2);
    traj.states.reserve(static_cast<std::size_t>(n) + 2);
    traj.controls.reserve(static_cast<std::size_t>(n) + 2);
    traj.times.push_back(0.0);
    traj.states.push_back(x0);
    traj.controls.push_back(control(0, 0.0));
    if (stop(traj, -1)) return traj;

    State x = x0;
    for (int i = 0; i < n; ++i) {
        const double t = i * h;
        try {
            x = rk4_step(f, x, h, control(i, 0.0), control(i, 0.5), control(i, 1.0));
        } catch (const PropagationError&) {
            throw;
        } catch (const std::exception& e) {
            throw PropagationError(t, e.what());
        }
        if (!finite_state(x)) throw PropagationError(t, "state became non-finite");
        traj.times.push_back((i + 1) * h);
        traj.states.push_back(x);
        traj.controls.push_back(control(i + 1, 0.0));
        if (stop(traj, i)) return traj;
    }
    traj.events.push_back({traj.times.back(), EventKind::final_time});
    return traj;
}

}  // namespace detail

/**
 * @brief RK4 over [0, t_final] with piecewise-linear (or held) controls.
 *
 * `f(state, control)` returns the state derivative. t_final must be a whole
 * number of steps. Any exception raised by `f` is rethrown as a
 * PropagationError carrying the failing step time.
 */
template <class State, class F>
Trajectory<State> integrate(F&& f, const State& x0, const ControlProgram& program, double t_final,
                            const IntegratorConfig& config = {}) {
    return detail::march(std::forward<F>(f), x0, program, t_final, config,
                         [](const Trajectory<State>&, int) { return false; });
}

/**
 * @brief Integrates until the depth first reaches zero or `t_max` elapses.
 *
 * The crossing time is linearly interpolated inside the step where depth
 * changes sign; the interpolated state replaces the step end point and a
 * surface_crossing event is recorded. A start at or above the surface is
 * an immediate crossing at t = 0.
 */
template <class State, class F>
Trajectory<State> simulate_to_surface(F&& f, const State& x0, const ControlProgram& program, double t_max,
                                      const IntegratorConfig& config = {}) {
    auto stop = [&program, &config](Trajectory<State>& traj, int step) {
        if (step < 0) {
            if (depth_of(traj.states.front()) > 0.0) return false;
            traj.events.push_back({0.0, EventKind::surface_crossing});
            return true;
        }
        const std::size_t last = traj.states.size() - 1;
        const double z0 = depth_of(traj.states[last - 1]);
        const double z1 = depth_of(traj.states[last]);
        if (z1 > 0.0) return false;
        const double frac = z0 / (z0 - z1);
        const double t0 = traj.times[last - 1];
        const double tc = t0 + frac * config.step;
        traj.states[last] = traj.states[last - 1] + frac * (traj.states[last] - traj.states[last - 1]);
        traj.times[last] = tc;
        traj.controls[last] = program.at(tc, config.interpolation);
        traj.events.push_back({tc, EventKind::surface_crossing});
        return true;
    };
    return detail::march(std::forward<F>(f), x0, program, t_max, config, stop);
}

/// Launch-phase simplified model under a thrust program.
Trajectory<LongitudinalState> simulate_launch(const VehicleModel& model, const LongitudinalState& x0,
                                              const ControlProgram& program, double t_final,
                                              const IntegratorConfig& config = {}, bool stop_at_surface = false);

/// Boost-phase simplified model under a thrust / deflection program.
Trajectory<LongitudinalState> simulate_boost(const VehicleModel& model, const LongitudinalState& x0,
                                             const ControlProgram& program, double t_final,
                                             const IntegratorConfig& config = {});

/// Full model from a longitudinal start; deflection is applied in pitch only.
Trajectory<BodyState6DOF> simulate_six_dof(const VehicleModel& model, const BodyState6DOF& x0,
                                           const ControlProgram& program, double t_final,
                                           const IntegratorConfig& config = {}, const SixDofOptions& options = {},
                                           bool stop_at_surface = false);

/// Longitudinal view of a full-state trajectory.
Trajectory<LongitudinalState> project(const Trajectory<BodyState6DOF>& traj);

}  // namespace hydroboost
