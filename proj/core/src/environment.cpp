#include "hydroboost/environment.hpp"

#include <cmath>
#include <string>

#include "hydroboost/error.hpp"

namespace hydroboost {

void EnvironmentModel::validate() const {
    auto positive = [](double value, const char* name) {
        if (!(value > 0.0) || !std::isfinite(value))
            throw ParameterError(std::string("environment: ") + name + " must be positive and finite");
    };
    positive(water_density, "water_density");
    positive(gravity, "gravity");
    positive(isa_sea_level_density, "isa_sea_level_density");
    positive(isa_sea_level_temperature, "isa_sea_level_temperature");
    positive(isa_lapse_rate, "isa_lapse_rate");
    positive(gas_constant_air, "gas_constant_air");
    positive(isa_reference_gravity, "isa_reference_gravity");
    positive(speed_of_sound, "speed_of_sound");
    if (isa_lapse_rate * kTroposphereTop >= isa_sea_level_temperature)
        throw ParameterError("environment: lapse rate drives the troposphere temperature to zero");
}

double EnvironmentModel::air_density(double altitude) const {
    if (!(altitude >= 0.0 && altitude <= kTroposphereTop))
        throw DomainError("air_density: altitude " + std::to_string(altitude) +
                          " m outside the troposphere band [0, 11000] m");
    if (altitude == 0.0) return isa_sea_level_density;
    const double ratio = 1.0 - isa_lapse_rate * altitude / isa_sea_level_temperature;
    const double exponent = isa_reference_gravity / (gas_constant_air * isa_lapse_rate) - 1.0;
    return isa_sea_level_density * std::pow(ratio, exponent);
}

double EnvironmentModel::medium_density(double depth_or_altitude, Medium medium) const {
    return medium == Medium::water ? water_density : air_density(depth_or_altitude);
}

double total_speed(double u, double v, double w) { return std::sqrt(u * u + v * v + w * w); }

double dynamic_pressure(double density, double speed) { return 0.5 * density * speed * speed; }

}  // namespace hydroboost
