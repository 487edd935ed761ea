#include "hydroboost/model.hpp"

namespace hydroboost {

VehicleModel VehicleModel::standard() { return make(VehicleParams{}, EnvironmentModel{}, CoefficientProvider{}); }

VehicleModel VehicleModel::make(const VehicleParams& params, const EnvironmentModel& environment,
                                CoefficientProvider coefficients) {
    params.validate();
    environment.validate();
    VehicleModel model;
    model.params = params;
    model.environment = environment;
    model.added_mass = derive_added_mass(params, environment.water_density);
    model.coefficients = std::move(coefficients);
    return model;
}

}  // namespace hydroboost
