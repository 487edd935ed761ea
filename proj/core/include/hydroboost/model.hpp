#pragma once

#include "hydroboost/coefficients.hpp"
#include "hydroboost/environment.hpp"
#include "hydroboost/vehicle.hpp"

namespace hydroboost {

/**
 * @brief Everything a force model needs, bundled and immutable.
 *
 * `added_mass` is the underwater set; in air the dynamics use no added mass.
 */
struct VehicleModel {
    VehicleParams params;
    EnvironmentModel environment;
    AddedMassSet added_mass;
    CoefficientProvider coefficients;

    /// Default vehicle, seawater/ISA environment, analytic coefficients and
    /// the added-mass set derived at the water density.
    static VehicleModel standard();

    /// Validates the inputs and derives the added-mass set.
    static VehicleModel make(const VehicleParams& params, const EnvironmentModel& environment,
                             CoefficientProvider coefficients);
};

}  // namespace hydroboost
