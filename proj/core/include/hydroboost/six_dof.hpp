#pragma once

#include <Eigen/Core>

#include "hydroboost/environment.hpp"
#include "hydroboost/model.hpp"

namespace hydroboost {

using Vector12 = Eigen::Matrix<double, 12, 1>;

/**
 * @brief Full rigid-body state.
 *
 * Body velocities (u, v, w) [m/s] and rates (p, q, r) [rad/s], Euler angles
 * [rad] and NED position [m] with `down` positive below the sea surface
 * (depth underwater, altitude = -down in air).
 */
struct BodyState6DOF {
    double u = 0.0, v = 0.0, w = 0.0;
    double p = 0.0, q = 0.0, r = 0.0;
    double roll = 0.0, pitch = 0.0, yaw = 0.0;
    double north = 0.0, east = 0.0, down = 0.0;

    Vector6 nu() const {
        Vector6 out;
        out << u, v, w, p, q, r;
        return out;
    }

    Vector12 as_vector() const {
        Vector12 out;
        out << u, v, w, p, q, r, roll, pitch, yaw, north, east, down;
        return out;
    }

    static BodyState6DOF from_vector(const Vector12& x) {
        return {x(0), x(1), x(2), x(3), x(4), x(5), x(6), x(7), x(8), x(9), x(10), x(11)};
    }

    friend BodyState6DOF operator+(const BodyState6DOF& a, const BodyState6DOF& b) {
        return from_vector(a.as_vector() + b.as_vector());
    }
    friend BodyState6DOF operator-(const BodyState6DOF& a, const BodyState6DOF& b) {
        return from_vector(a.as_vector() - b.as_vector());
    }
    friend BodyState6DOF operator*(double k, const BodyState6DOF& a) { return from_vector(k * a.as_vector()); }
};

/// Booster command: thrust [N] and pitch / yaw deflections [rad].
struct ThrustCommand {
    double thrust = 0.0;
    double pitch_deflection = 0.0;
    double yaw_deflection = 0.0;
};

/**
 * Switches that let the full model reproduce the simplified phase models
 * term for term: small-angle thrust and d/2u (instead of d/2V) rate
 * normalisation.
 */
struct SixDofOptions {
    enum class RateReference { total_speed, forward_speed };

    bool small_angle_thrust = false;
    RateReference rate_reference = RateReference::total_speed;
};

/// Underwater when down > 0, otherwise in air.
inline Medium medium_at(double down) { return down > 0.0 ? Medium::water : Medium::air; }

/// Pitch magnitude above which Euler kinematics switch to the planar form [rad].
inline constexpr double kVerticalPitchLimit = 89.9 * 3.14159265358979323846 / 180.0;

/**
 * @brief Time derivative of the full state.
 *
 * Solves (M_RB + M_A) nu_dot = tau_A/H + tau_R + tau_T - (C_RB + C_A) nu.
 * Water: seawater density, buoyancy and the model's added mass, Mach 0.
 * Air: ISA density at altitude -down, no buoyancy, no added mass,
 * Mach = V / speed_of_sound.
 *
 * For |pitch| >= 89.9 deg the planar kinematics pitch_dot = q are used;
 * any roll, roll rate or yaw rate there raises SingularityError.
 * A singular mass matrix raises ParameterError.
 */
BodyState6DOF six_dof_derivative(const BodyState6DOF& state, const ThrustCommand& command, const VehicleModel& model,
                                 const SixDofOptions& options = {});

}  // namespace hydroboost
