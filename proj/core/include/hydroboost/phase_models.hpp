#pragma once

#include "hydroboost/model.hpp"
#include "hydroboost/six_dof.hpp"

namespace hydroboost {

/// Longitudinal state [u, w, q, theta, z]; z positive down.
struct LongitudinalState {
    double u = 0.0;      ///< forward body velocity [m/s]
    double w = 0.0;      ///< down body velocity [m/s]
    double q = 0.0;      ///< pitch rate [rad/s]
    double theta = 0.0;  ///< pitch angle [rad]
    double z = 0.0;      ///< depth, or -altitude [m]

    static constexpr int size = 5;

    double operator[](int i) const { return const_cast<LongitudinalState&>(*this)[i]; }

    double& operator[](int i) {
        switch (i) {
            case 0: return u;
            case 1: return w;
            case 2: return q;
            case 3: return theta;
            default: return z;
        }
    }

    LongitudinalState& operator+=(const LongitudinalState& o) {
        u += o.u;
        w += o.w;
        q += o.q;
        theta += o.theta;
        z += o.z;
        return *this;
    }

    friend LongitudinalState operator+(LongitudinalState a, const LongitudinalState& b) { return a += b; }
    friend LongitudinalState operator-(const LongitudinalState& a, const LongitudinalState& b) {
        return {a.u - b.u, a.w - b.w, a.q - b.q, a.theta - b.theta, a.z - b.z};
    }
    friend LongitudinalState operator*(double k, const LongitudinalState& a) {
        return {k * a.u, k * a.w, k * a.q, k * a.theta, k * a.z};
    }
    friend bool operator==(const LongitudinalState&, const LongitudinalState&) = default;
};

/// Boost-phase control: thrust [N] and pitch deflection [rad].
struct BoostControl {
    double thrust = 0.0;
    double deflection = 0.0;
};

/**
 * @brief Simplified underwater launch dynamics.
 *
 * Seawater density and buoyancy throughout, zero deflection, rates
 * normalised by d/2u. The coupled heave/pitch accelerations are obtained
 * from the 2x2 system [[m - Z_wdot, -Z_qdot], [-M_wdot, Iy - M_qdot]].
 * Throws SingularityError for u <= 0 and ParameterError if the 2x2 system
 * is singular.
 */
LongitudinalState launch_derivative(const LongitudinalState& x, double thrust, const VehicleModel& model);

/**
 * @brief Simplified airborne boost dynamics.
 *
 * Rigid body only (no added mass, no buoyancy), small-angle thrust
 * deflection, ISA density at altitude -z. Altitudes are clamped into the
 * modelled band [0, 11000] m so that a trajectory dipping below the surface
 * still evaluates. Throws SingularityError for u <= 0.
 */
LongitudinalState boost_derivative(const LongitudinalState& x, const BoostControl& control, const VehicleModel& model);

/// Places a longitudinal state in the vertical plane of the full state.
BodyState6DOF embed(const LongitudinalState& x);

/// Longitudinal components of a full state.
LongitudinalState project(const BodyState6DOF& s);

/// Six-DOF options under which the full model reduces to the phase models.
inline SixDofOptions matched_options() {
    return {true, SixDofOptions::RateReference::forward_speed};
}

}  // namespace hydroboost
