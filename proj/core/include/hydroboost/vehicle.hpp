#pragma once

#include <Eigen/Core>

#include "hydroboost/environment.hpp"

namespace hydroboost {

using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix6 = Eigen::Matrix<double, 6, 6>;

/// Point in the measurement frame: origin at the nose tip, x running aft [m].
struct MeasurementPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/**
 * @brief Physical parameters of the vehicle.
 *
 * Defaults describe a cruise-missile sized vehicle (L = 6.1806 m,
 * d = 0.5175 m, m = 1513 kg). Mass properties are shared by the launch and
 * boost phases.
 *
 * `nose_length` (ellipsoidal nose, measured from the tip) and `thrust_arm`
 * (signed body-x coordinate of the booster thrust point relative to the cg,
 * negative = aft) are assumed geometry; change them to match a real airframe.
 */
struct VehicleParams {
    double mass = 1513.0;            ///< [kg]
    double inertia_x = 50.6684;      ///< [kg m^2]
    double inertia_y = 4841.6944;    ///< [kg m^2]
    double inertia_z = 4841.6944;    ///< [kg m^2]
    double length = 6.1806;          ///< [m]
    double diameter = 0.5175;        ///< also the reference length [m]
    double reference_area = 0.2104;  ///< [m^2]
    double volume = 1.332;           ///< displaced volume [m^3]
    MeasurementPoint cg_position{3.1903, 0.0, 0.0};
    MeasurementPoint cb_position{3.0903, 0.0, 0.0};
    double nose_length = 0.4656;     ///< [m]
    double thrust_arm = -2.9903;     ///< l_x [m]

    /// x_b: forward offset of the centre of buoyancy from the cg [m].
    double buoyancy_arm() const { return cg_position.x - cb_position.x; }

    double weight(const EnvironmentModel& env) const { return mass * env.gravity; }
    double buoyancy(const EnvironmentModel& env) const { return env.water_density * env.gravity * volume; }

    /// Throws ParameterError on non-positive sizes or x_b <= 0.
    void validate() const;
};

/// Hydrodynamic added-mass derivatives. Units: kg, kg m, kg m^2 (per rad where rotational).
struct AddedMassSet {
    double x_udot = 0.0;
    double y_vdot = 0.0;
    double y_rdot = 0.0;
    double z_wdot = 0.0;
    double z_qdot = 0.0;
    double k_pdot = 0.0;
    double m_wdot = 0.0;
    double m_qdot = 0.0;
    double n_vdot = 0.0;
    double n_rdot = 0.0;
};

/**
 * @brief Derives the added-mass set of the finless body in a fluid of density `rho`.
 *
 * Axial term: prolate spheroid (Lamb / Blevins k1 coefficient) with minor
 * semi-axis d/2 and the major semi-axis that gives the spheroid the vehicle's
 * displaced volume. Remaining terms: strip theory with sectional added mass
 * rho*pi*r(x)^2 over an ellipsoidal nose plus a cylindrical body, midpoint
 * rule on `strips` strips, moments taken about the centre of buoyancy.
 * K_pdot is zero (no fins).
 *
 * Throws ParameterError for non-positive density, invalid params or a nose
 * longer than the body.
 */
AddedMassSet derive_added_mass(const VehicleParams& params, double rho, int strips = 1000);

/// Negated added-mass pattern M_A and the skew-symmetric C_A(nu).
struct AddedMassMatrices {
    Matrix6 mass;
    Matrix6 coriolis;
};

AddedMassMatrices added_mass_terms(const AddedMassSet& a, const Vector6& nu);

/// M_RB = diag(m, m, m, Ix, Iy, Iz) and C_RB(nu) for a body-frame origin at the cg.
struct RigidBodyMatrices {
    Matrix6 mass;
    Matrix6 coriolis;
};

RigidBodyMatrices rigid_body_terms(const VehicleParams& params, const Vector6& nu);

}  // namespace hydroboost
