#include "hydroboost/vehicle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hydroboost/error.hpp"

namespace hydroboost {

namespace {

constexpr double kPi = std::numbers::pi;

// Lamb's longitudinal added-mass coefficient k1 for a prolate spheroid with
// semi-axes a > b.
double prolate_axial_coefficient(double a, double b) {
    const double e = std::sqrt(1.0 - (b * b) / (a * a));
    const double alpha0 =
        2.0 * (1.0 - e * e) / (e * e * e) * (0.5 * std::log((1.0 + e) / (1.0 - e)) - e);
    return alpha0 / (2.0 - alpha0);
}

Eigen::Matrix3d skew(const Eigen::Vector3d& a) {
    Eigen::Matrix3d s;
    s << 0.0, -a.z(), a.y(),
         a.z(), 0.0, -a.x(),
         -a.y(), a.x(), 0.0;
    return s;
}

}  // namespace

void VehicleParams::validate() const {
    auto positive = [](double value, const char* name) {
        if (!(value > 0.0) || !std::isfinite(value))
            throw ParameterError(std::string("vehicle: ") + name + " must be positive and finite");
    };
    positive(mass, "mass");
    positive(inertia_x, "inertia_x");
    positive(inertia_y, "inertia_y");
    positive(inertia_z, "inertia_z");
    positive(length, "length");
    positive(diameter, "diameter");
    positive(reference_area, "reference_area");
    positive(volume, "volume");
    if (!(buoyancy_arm() > 0.0))
        throw ParameterError("vehicle: centre of buoyancy must lie forward of the cg (x_b > 0)");
    if (!(nose_length >= 0.0) || nose_length > length)
        throw ParameterError("vehicle: nose_length must lie in [0, length]");
    if (!std::isfinite(thrust_arm)) throw ParameterError("vehicle: thrust_arm must be finite");
}

AddedMassSet derive_added_mass(const VehicleParams& params, double rho, int strips) {
    params.validate();
    if (!(rho > 0.0) || !std::isfinite(rho)) throw ParameterError("derive_added_mass: density must be positive");
    if (strips < 1) throw ParameterError("derive_added_mass: strip count must be positive");

    const double radius = 0.5 * params.diameter;

    // Equal-volume spheroid; a degenerate (a <= b) body has no slender-axis formula.
    const double semi_major = 3.0 * params.volume / (4.0 * kPi * radius * radius);
    if (!(semi_major > radius))
        throw ParameterError("derive_added_mass: body too short for the prolate-spheroid axial model");
    const double k1 = prolate_axial_coefficient(semi_major, radius);

    // Sectional integrals, s measured aft from the nose tip.
    const double ds = params.length / strips;
    const double reference = params.cb_position.x;
    double m0 = 0.0;  // integral of a(x)
    double m1 = 0.0;  // integral of x a(x), x forward of the reference
    double m2 = 0.0;  // integral of x^2 a(x)
    for (int i = 0; i < strips; ++i) {
        const double s = (i + 0.5) * ds;
        double r2 = radius * radius;
        if (s < params.nose_length) {
            const double xi = (params.nose_length - s) / params.nose_length;
            r2 *= 1.0 - xi * xi;
        }
        const double sectional = rho * kPi * r2;
        const double x = reference - s;
        m0 += sectional * ds;
        m1 += sectional * x * ds;
        m2 += sectional * x * x * ds;
    }

    AddedMassSet a;
    a.x_udot = -k1 * rho * params.volume;
    a.y_vdot = -m0;
    a.z_wdot = -m0;
    a.y_rdot = m1;
    a.n_vdot = m1;
    a.z_qdot = -m1;
    a.m_wdot = -m1;
    a.m_qdot = -m2;
    a.n_rdot = -m2;
    a.k_pdot = 0.0;
    return a;
}

AddedMassMatrices added_mass_terms(const AddedMassSet& a, const Vector6& nu) {
    const double u = nu(0), v = nu(1), w = nu(2), p = nu(3), q = nu(4), r = nu(5);

    AddedMassMatrices out;
    out.mass.setZero();
    out.mass(0, 0) = -a.x_udot;
    out.mass(1, 1) = -a.y_vdot;
    out.mass(1, 5) = -a.y_rdot;
    out.mass(2, 2) = -a.z_wdot;
    out.mass(2, 4) = -a.z_qdot;
    out.mass(3, 3) = -a.k_pdot;
    out.mass(4, 2) = -a.m_wdot;
    out.mass(4, 4) = -a.m_qdot;
    out.mass(5, 1) = -a.n_vdot;
    out.mass(5, 5) = -a.n_rdot;

    const double a1 = a.x_udot * u;
    const double a2 = a.y_vdot * v + a.y_rdot * r;
    const double a3 = a.z_wdot * w + a.z_qdot * q;
    const double b1 = a.k_pdot * p;
    const double b2 = a.m_wdot * w + a.m_qdot * q;
    const double b3 = a.n_vdot * v + a.n_rdot * r;

    out.coriolis << 0.0, 0.0, 0.0, 0.0, -a3, a2,
                    0.0, 0.0, 0.0, a3, 0.0, -a1,
                    0.0, 0.0, 0.0, -a2, a1, 0.0,
                    0.0, -a3, a2, 0.0, -b3, b2,
                    a3, 0.0, -a1, b3, 0.0, -b1,
                    -a2, a1, 0.0, -b2, b1, 0.0;
    return out;
}

RigidBodyMatrices rigid_body_terms(const VehicleParams& params, const Vector6& nu) {
    const Eigen::Vector3d linear = nu.head<3>();
    const Eigen::Vector3d angular = nu.tail<3>();
    const Eigen::Vector3d inertia(params.inertia_x, params.inertia_y, params.inertia_z);

    RigidBodyMatrices out;
    out.mass.setZero();
    out.mass.diagonal() << params.mass, params.mass, params.mass, inertia;

    // Skew-symmetric parameterisation; C_RB * nu = [m w x v; w x (I w)].
    out.coriolis.setZero();
    out.coriolis.topRightCorner<3, 3>() = -params.mass * skew(linear);
    out.coriolis.bottomLeftCorner<3, 3>() = -params.mass * skew(linear);
    out.coriolis.bottomRightCorner<3, 3>() = -skew(inertia.cwiseProduct(angular));
    return out;
}

}  // namespace hydroboost
