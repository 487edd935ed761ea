#include "hydroboost/phase_models.hpp"

#include <algorithm>
#include <cmath>

#include "hydroboost/error.hpp"

namespace hydroboost {

LongitudinalState launch_derivative(const LongitudinalState& x, double thrust, const VehicleModel& model) {
    if (!(x.u > 0.0)) throw SingularityError("launch_derivative: forward velocity must be positive");
    const VehicleParams& p = model.params;
    const AddedMassSet& a = model.added_mass;
    const EnvironmentModel& env = model.environment;

    const double rho = env.water_density;
    const double qa = dynamic_pressure(rho, std::hypot(x.u, x.w)) * p.reference_area;
    const AeroCoefficients c = model.coefficients.evaluate(std::atan2(x.w, x.u), 0.0, 0.0);
    const double rate = p.diameter / (2.0 * x.u) * x.q;

    const double net = p.weight(env) - p.buoyancy(env);
    const double buoy = p.buoyancy(env);
    const double st = std::sin(x.theta), ct = std::cos(x.theta);

    const double fx = qa * (c.c0[kX] + c.cq[kX] * rate) + thrust - net * st;
    const double fz = qa * (c.c0[kZ] + c.cq[kZ] * rate) + net * ct;
    const double my = qa * p.diameter * (c.c0[kPitch] + c.cq[kPitch] * rate) + p.buoyancy_arm() * buoy * ct;

    const double m = p.mass;
    const double rhs_u = fx - m * x.w * x.q + a.z_wdot * x.w * x.q + a.z_qdot * x.q * x.q;
    const double rhs_w = fz + m * x.q * x.u - a.x_udot * x.q * x.u;
    const double rhs_q = my - a.z_wdot * x.w * x.u - a.z_qdot * x.q * x.u + a.x_udot * x.u * x.w;

    const double m11 = m - a.z_wdot, m12 = -a.z_qdot;
    const double m21 = -a.m_wdot, m22 = p.inertia_y - a.m_qdot;
    const double det = m11 * m22 - m12 * m21;
    if (!(std::abs(det) > 0.0) || !std::isfinite(det))
        throw ParameterError("launch_derivative: singular heave/pitch mass matrix");

    LongitudinalState d;
    d.u = rhs_u / (m - a.x_udot);
    d.w = (m22 * rhs_w - m12 * rhs_q) / det;
    d.q = (m11 * rhs_q - m21 * rhs_w) / det;
    d.theta = x.q;
    d.z = -st * x.u + ct * x.w;
    return d;
}

LongitudinalState boost_derivative(const LongitudinalState& x, const BoostControl& control, const VehicleModel& model) {
    if (!(x.u > 0.0)) throw SingularityError("boost_derivative: forward velocity must be positive");
    const VehicleParams& p = model.params;
    const EnvironmentModel& env = model.environment;

    const double altitude = std::clamp(-x.z, 0.0, kTroposphereTop);
    const double speed = std::hypot(x.u, x.w);
    const double qa = dynamic_pressure(env.air_density(altitude), speed) * p.reference_area;
    const AeroCoefficients c = model.coefficients.evaluate(std::atan2(x.w, x.u), 0.0, speed / env.speed_of_sound);
    const double rate = p.diameter / (2.0 * x.u) * x.q;

    const double weight = p.weight(env);
    const double st = std::sin(x.theta), ct = std::cos(x.theta);
    const double t = control.thrust, dt = control.deflection;
    const double m = p.mass;

    LongitudinalState d;
    d.u = (qa * (c.c0[kX] + c.cq[kX] * rate) + t - weight * st - m * x.w * x.q) / m;
    d.w = (qa * (c.c0[kZ] + c.cq[kZ] * rate) - t * dt + weight * ct + m * x.q * x.u) / m;
    d.q = (qa * p.diameter * (c.c0[kPitch] + c.cq[kPitch] * rate) + t * p.thrust_arm * dt) / p.inertia_y;
    d.theta = x.q;
    d.z = -st * x.u + ct * x.w;
    return d;
}

BodyState6DOF embed(const LongitudinalState& x) {
    BodyState6DOF s;
    s.u = x.u;
    s.w = x.w;
    s.q = x.q;
    s.pitch = x.theta;
    s.down = x.z;
    return s;
}

LongitudinalState project(const BodyState6DOF& s) { return {s.u, s.w, s.q, s.pitch, s.down}; }

}  // namespace hydroboost
