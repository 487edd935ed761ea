#pragma once

#include "hydroboost/coefficients.hpp"
#include "hydroboost/vehicle.hpp"

namespace hydroboost {

/// Body-frame forces [N] and moments [N m].
struct ForceMoment {
    double X = 0.0;
    double Y = 0.0;
    double Z = 0.0;
    double L = 0.0;
    double M = 0.0;
    double N = 0.0;

    Vector6 as_vector() const {
        Vector6 v;
        v << X, Y, Z, L, M, N;
        return v;
    }

    ForceMoment& operator+=(const ForceMoment& o) {
        X += o.X;
        Y += o.Y;
        Z += o.Z;
        L += o.L;
        M += o.M;
        N += o.N;
        return *this;
    }

    friend ForceMoment operator+(ForceMoment a, const ForceMoment& b) { return a += b; }
    friend bool operator==(const ForceMoment&, const ForceMoment&) = default;
};

/// Gravity plus buoyancy with cg and cb on the body x axis; pass B = 0 in air.
ForceMoment restoring_forces(double weight, double buoyancy, double buoyancy_arm, double roll, double pitch);

/**
 * Booster thrust applied at (thrust_arm, 0, 0). `small_angle` selects the
 * linearised form (T, T psi_T, -T theta_T, 0, T l_x theta_T, T l_x psi_T).
 */
ForceMoment thrust_forces(double thrust, double pitch_deflection, double yaw_deflection, double thrust_arm,
                          bool small_angle);

/// Everything the coefficient model needs at one instant.
struct FlowCondition {
    double dynamic_pressure = 0.0;  ///< Q [Pa]
    double reference_area = 0.0;    ///< A [m^2]
    double reference_length = 0.0;  ///< d [m]
    double rate_speed = 0.0;        ///< speed V in the d/2V rate normalisation [m/s]
    double alpha = 0.0;             ///< [rad]
    double beta = 0.0;              ///< [rad]
    double mach = 0.0;
    double p = 0.0;
    double q = 0.0;
    double r = 0.0;
};

/**
 * tau = Q A [C_x, C_y, C_z, d C_l, d C_m, d C_n].
 * Throws SingularityError when rate_speed is zero but a body rate is not.
 */
ForceMoment aero_hydro_forces(const CoefficientProvider& provider, const FlowCondition& flow);

}  // namespace hydroboost
