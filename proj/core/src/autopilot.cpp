#include "hydroboost/autopilot.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

namespace hydroboost {

namespace {

using Matrix3 = Eigen::Matrix3d;
using Vector3 = Eigen::Vector3d;

template <class S>
struct Augmented {
    S x;
    double integral = 0.0;

    friend Augmented operator+(const Augmented& a, const Augmented& b) { return {a.x + b.x, a.integral + b.integral}; }
    friend Augmented operator-(const Augmented& a, const Augmented& b) { return {a.x - b.x, a.integral - b.integral}; }
    friend Augmented operator*(double k, const Augmented& a) { return {k * a.x, k * a.integral}; }
};

template <class S>
bool finite_state(const Augmented<S>& a) {
    return detail::finite_state(a.x) && std::isfinite(a.integral);
}

}  // namespace

PitchAutopilot PitchAutopilot::synthesize(const VehicleModel& model, double theta0, double max_thrust,
                                          double max_deflection, const AutopilotWeights& weights, double sample_time) {
    if (!(max_thrust > 0.0) || !(max_deflection > 0.0) || !(sample_time > 0.0))
        throw ParameterError("autopilot: limits and sample time must be positive");
    const VehicleParams& p = model.params;
    const EnvironmentModel& env = model.environment;

    const LongitudinalState trim{kTrimSpeed, 0.0, 0.0, theta0, -kTrimAltitude};
    const double qa = dynamic_pressure(env.air_density(kTrimAltitude), kTrimSpeed) * p.reference_area;
    const double axial = model.coefficients.evaluate(0.0, 0.0, kTrimSpeed / env.speed_of_sound).c0[kX];
    const double thrust = std::clamp(p.weight(env) * std::sin(theta0) - qa * axial, 0.1 * max_thrust, max_thrust);

    // Pitch-rate damping and deflection effectiveness by central differences.
    const double hq = 1e-4, hd = 1e-5;
    auto qdot = [&](double q, double deflection) {
        LongitudinalState x = trim;
        x.q = q;
        return boost_derivative(x, {thrust, deflection}, model).q;
    };
    const double a_qq = (qdot(hq, 0.0) - qdot(-hq, 0.0)) / (2.0 * hq);
    const double b_q = (qdot(0.0, hd) - qdot(0.0, -hd)) / (2.0 * hd);
    if (!(std::abs(b_q) > 0.0)) throw ParameterError("autopilot: deflection has no pitch authority at trim");

    // States (q, e, int e), continuous model then zero-order-hold discretisation.
    Eigen::Matrix4d cont = Eigen::Matrix4d::Zero();
    cont(0, 0) = a_qq;
    cont(1, 0) = 1.0;
    cont(2, 1) = 1.0;
    cont(0, 3) = b_q;
    const Eigen::Matrix4d disc = (cont * sample_time).exp();
    const Matrix3 A = disc.topLeftCorner<3, 3>();
    const Vector3 B = disc.topRightCorner<3, 1>();

    const Matrix3 Q = Vector3(weights.pitch_rate, weights.pitch_error, weights.integral).asDiagonal();
    const double R = weights.deflection;
    Matrix3 P = Q;
    for (int it = 0; it < 200000; ++it) {
        const double s = R + B.dot(P * B);
        const Eigen::RowVector3d k = (B.transpose() * P * A) / s;
        const Matrix3 next = A.transpose() * P * A - (A.transpose() * P * B) * k + Q;
        const double change = (next - P).cwiseAbs().maxCoeff();
        P = 0.5 * (next + next.transpose());
        if (change <= 1e-12 * std::max(1.0, P.cwiseAbs().maxCoeff())) break;
    }
    const Eigen::RowVector3d K = (B.transpose() * P * A) / (R + B.dot(P * B));

    PitchAutopilot ap;
    ap.gains_ = {K(0), K(1), K(2)};
    ap.trim_thrust_ = thrust;
    ap.max_deflection_ = max_deflection;
    ap.min_thrust_ = 1e-6 * max_thrust;
    const Matrix3 closed = A - B * K;
    ap.radius_ = closed.eigenvalues().cwiseAbs().maxCoeff();
    if (!(ap.radius_ < 1.0)) throw ParameterError("autopilot: LQ design did not stabilise the pitch loop");
    return ap;
}

double PitchAutopilot::command(double q, double error, double integral, double thrust) const {
    if (!(thrust > min_thrust_)) return 0.0;
    const double raw = -(gains_[0] * q + gains_[1] * error + gains_[2] * integral) * trim_thrust_ / thrust;
    return std::clamp(raw, -max_deflection_, max_deflection_);
}

bool PitchAutopilot::saturated(double q, double error, double integral, double thrust) const {
    if (!(thrust > min_thrust_)) return false;
    const double raw = -(gains_[0] * q + gains_[1] * error + gains_[2] * integral) * trim_thrust_ / thrust;
    return std::abs(raw) >= max_deflection_;
}

Trajectory<LongitudinalState> closed_loop_boost(const VehicleModel& model, const LongitudinalState& x0,
                                                const ControlProgram& thrust_program,
                                                const std::vector<double>& theta_ref, const PitchAutopilot& autopilot,
                                                double t_final, BoostPlant plant, const IntegratorConfig& config) {
    if (theta_ref.size() != thrust_program.size())
        throw ParameterError("closed_loop_boost: pitch reference and thrust program must share one grid");

    // Thrust and reference travel together through the interpolated sample.
    std::vector<ControlSample> merged(thrust_program.size());
    for (std::size_t k = 0; k < merged.size(); ++k) merged[k] = {thrust_program.samples()[k].thrust, theta_ref[k]};
    const ControlProgram program(thrust_program.dt(), std::move(merged));

    auto deflection = [&autopilot](double q, double theta, double integral, const ControlSample& c) {
        return autopilot.command(q, theta - c.deflection, integral, c.thrust);
    };
    auto integral_rate = [&autopilot](double q, double theta, double integral, const ControlSample& c) {
        const double e = theta - c.deflection;
        const double cmd = autopilot.command(q, e, integral, c.thrust);
        // Conditional integration: hold the integrator while saturation is pushed further.
        if (autopilot.saturated(q, e, integral, c.thrust) && cmd * e < 0.0) return 0.0;
        return e;
    };

    Trajectory<LongitudinalState> out;
    if (plant == BoostPlant::simplified) {
        using S = Augmented<LongitudinalState>;
        auto f = [&](const S& s, const ControlSample& c) {
            const double d = deflection(s.x.q, s.x.theta, s.integral, c);
            return S{boost_derivative(s.x, {c.thrust, d}, model), integral_rate(s.x.q, s.x.theta, s.integral, c)};
        };
        const auto traj = detail::march(f, S{x0, 0.0}, program, t_final, config,
                                        [](const Trajectory<S>&, int) { return false; });
        out.times = traj.times;
        out.events = traj.events;
        for (std::size_t i = 0; i < traj.states.size(); ++i) {
            const S& s = traj.states[i];
            out.states.push_back(s.x);
            out.controls.push_back({traj.controls[i].thrust, deflection(s.x.q, s.x.theta, s.integral, traj.controls[i])});
        }
    } else {
        using S = Augmented<BodyState6DOF>;
        auto f = [&](const S& s, const ControlSample& c) {
            const double d = deflection(s.x.q, s.x.pitch, s.integral, c);
            return S{six_dof_derivative(s.x, {c.thrust, d, 0.0}, model),
                     integral_rate(s.x.q, s.x.pitch, s.integral, c)};
        };
        const auto traj = detail::march(f, S{embed(x0), 0.0}, program, t_final, config,
                                        [](const Trajectory<S>&, int) { return false; });
        out.times = traj.times;
        out.events = traj.events;
        for (std::size_t i = 0; i < traj.states.size(); ++i) {
            const S& s = traj.states[i];
            out.states.push_back(project(s.x));
            out.controls.push_back(
                {traj.controls[i].thrust, deflection(s.x.q, s.x.pitch, s.integral, traj.controls[i])});
        }
    }
    return out;
}

}  // namespace hydroboost
