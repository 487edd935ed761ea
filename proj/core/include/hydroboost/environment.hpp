#pragma once

namespace hydroboost {

enum class Medium { water, air };

/// Upper edge of the modelled atmosphere (ISA troposphere) [m].
inline constexpr double kTroposphereTop = 11000.0;

/**
 * @brief Medium properties shared by every force model.
 *
 * Defaults are seawater plus the 1976 ISA troposphere. `gravity` is the
 * field used for weight and buoyancy; `isa_reference_gravity` only enters
 * the ISA density exponent.
 */
struct EnvironmentModel {
    double water_density = 1023.0;              ///< [kg/m^3]
    double gravity = 9.81;                      ///< [m/s^2]
    double isa_sea_level_density = 1.225;       ///< [kg/m^3]
    double isa_sea_level_temperature = 288.15;  ///< [K]
    double isa_lapse_rate = 0.0065;             ///< [K/m]
    double gas_constant_air = 287.053;          ///< [J/(kg K)]
    double isa_reference_gravity = 9.80665;     ///< [m/s^2]
    double speed_of_sound = 340.0;              ///< Mach reference in air [m/s]

    /// Throws ParameterError unless every density, temperature and gravity is positive.
    void validate() const;

    /// ISA troposphere density. Throws DomainError outside [0, 11000] m.
    double air_density(double altitude) const;

    /// Water: constant seawater density. Air: air_density(depth_or_altitude).
    double medium_density(double depth_or_altitude, Medium medium) const;
};

/// |(u, v, w)|
double total_speed(double u, double v, double w);

/// Q = rho V^2 / 2
double dynamic_pressure(double density, double speed);

}  // namespace hydroboost
