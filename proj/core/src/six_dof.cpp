#include "hydroboost/six_dof.hpp"

#include <Eigen/LU>
#include <cmath>

#include "hydroboost/error.hpp"
#include "hydroboost/forces.hpp"

namespace hydroboost {

BodyState6DOF six_dof_derivative(const BodyState6DOF& s, const ThrustCommand& command, const VehicleModel& model,
                                 const SixDofOptions& options) {
    const VehicleParams& params = model.params;
    const EnvironmentModel& env = model.environment;
    const Medium medium = medium_at(s.down);
    const bool water = medium == Medium::water;

    const double rho = water ? env.water_density : env.air_density(-s.down);
    const double speed = total_speed(s.u, s.v, s.w);

    FlowCondition flow;
    flow.dynamic_pressure = dynamic_pressure(rho, speed);
    flow.reference_area = params.reference_area;
    flow.reference_length = params.diameter;
    flow.rate_speed = options.rate_reference == SixDofOptions::RateReference::forward_speed ? s.u : speed;
    flow.alpha = std::atan2(s.w, s.u);
    flow.beta = speed > 0.0 ? std::asin(s.v / speed) : 0.0;
    flow.mach = water ? 0.0 : speed / env.speed_of_sound;
    flow.p = s.p;
    flow.q = s.q;
    flow.r = s.r;

    ForceMoment tau = aero_hydro_forces(model.coefficients, flow);
    tau += restoring_forces(params.weight(env), water ? params.buoyancy(env) : 0.0, params.buoyancy_arm(), s.roll,
                            s.pitch);
    tau += thrust_forces(command.thrust, command.pitch_deflection, command.yaw_deflection, params.thrust_arm,
                         options.small_angle_thrust);

    const Vector6 nu = s.nu();
    const RigidBodyMatrices rb = rigid_body_terms(params, nu);
    Matrix6 mass = rb.mass;
    Vector6 rhs = tau.as_vector() - rb.coriolis * nu;
    if (water) {
        const AddedMassMatrices am = added_mass_terms(model.added_mass, nu);
        mass += am.mass;
        rhs -= am.coriolis * nu;
    }

    const Eigen::PartialPivLU<Matrix6> lu(mass);
    const double det = lu.determinant();
    if (!std::isfinite(det) || std::abs(det) < 1e-12 * mass.cwiseAbs().maxCoeff())
        throw ParameterError("six_dof_derivative: singular mass matrix");
    const Vector6 nu_dot = lu.solve(rhs);

    BodyState6DOF d;
    d.u = nu_dot(0);
    d.v = nu_dot(1);
    d.w = nu_dot(2);
    d.p = nu_dot(3);
    d.q = nu_dot(4);
    d.r = nu_dot(5);

    const double cphi = std::cos(s.roll), sphi = std::sin(s.roll);
    const double cth = std::cos(s.pitch), sth = std::sin(s.pitch);
    const double cpsi = std::cos(s.yaw), spsi = std::sin(s.yaw);

    if (std::abs(s.pitch) >= kVerticalPitchLimit) {
        if (s.p != 0.0 || s.r != 0.0 || s.roll != 0.0)
            throw SingularityError("six_dof_derivative: lateral motion at vertical attitude is not supported");
        d.roll = 0.0;
        d.pitch = s.q;
        d.yaw = 0.0;
    } else {
        d.roll = s.p + (s.q * sphi + s.r * cphi) * sth / cth;
        d.pitch = s.q * cphi - s.r * sphi;
        d.yaw = (s.q * sphi + s.r * cphi) / cth;
    }

    // Body to NED rotation, z-y-x Euler sequence.
    d.north = cpsi * cth * s.u + (cpsi * sth * sphi - spsi * cphi) * s.v + (cpsi * sth * cphi + spsi * sphi) * s.w;
    d.east = spsi * cth * s.u + (spsi * sth * sphi + cpsi * cphi) * s.v + (spsi * sth * cphi - cpsi * sphi) * s.w;
    d.down = -sth * s.u + cth * sphi * s.v + cth * cphi * s.w;
    return d;
}

}  // namespace hydroboost
