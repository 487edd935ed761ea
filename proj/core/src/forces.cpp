#include "hydroboost/forces.hpp"

#include <cmath>

#include "hydroboost/error.hpp"

namespace hydroboost {

ForceMoment restoring_forces(double weight, double buoyancy, double buoyancy_arm, double roll, double pitch) {
    const double net = weight - buoyancy;
    const double ct = std::cos(pitch), st = std::sin(pitch);
    const double cp = std::cos(roll), sp = std::sin(roll);
    ForceMoment f;
    f.X = -net * st;
    f.Y = net * ct * sp;
    f.Z = net * ct * cp;
    f.L = 0.0;
    f.M = buoyancy_arm * buoyancy * ct * cp;
    f.N = -buoyancy_arm * buoyancy * ct * sp;
    return f;
}

ForceMoment thrust_forces(double thrust, double pitch_deflection, double yaw_deflection, double thrust_arm,
                          bool small_angle) {
    ForceMoment f;
    if (small_angle) {
        f.X = thrust;
        f.Y = thrust * yaw_deflection;
        f.Z = -thrust * pitch_deflection;
        f.M = thrust * thrust_arm * pitch_deflection;
        f.N = thrust * thrust_arm * yaw_deflection;
        return f;
    }
    const double ct = std::cos(pitch_deflection), st = std::sin(pitch_deflection);
    const double cy = std::cos(yaw_deflection), sy = std::sin(yaw_deflection);
    f.X = thrust * ct * cy;
    f.Y = thrust * sy;
    f.Z = -thrust * st * cy;
    f.L = 0.0;
    f.M = thrust * thrust_arm * st * cy;
    f.N = thrust * thrust_arm * sy;
    return f;
}

ForceMoment aero_hydro_forces(const CoefficientProvider& provider, const FlowCondition& flow) {
    const bool rotating = flow.p != 0.0 || flow.q != 0.0 || flow.r != 0.0;
    if (flow.dynamic_pressure == 0.0 && !rotating) return {};
    if (rotating && !(flow.rate_speed > 0.0))
        throw SingularityError("aero_hydro_forces: body rates need a positive speed for d/2V normalisation");

    const AeroCoefficients c = provider.evaluate(flow.alpha, flow.beta, flow.mach);
    const double k = rotating ? flow.reference_length / (2.0 * flow.rate_speed) : 0.0;
    std::array<double, 6> total{};
    for (std::size_t i = 0; i < 6; ++i)
        total[i] = c.c0[i] + (c.cp[i] * flow.p + c.cq[i] * flow.q + c.cr[i] * flow.r) * k;

    const double qa = flow.dynamic_pressure * flow.reference_area;
    const double qad = qa * flow.reference_length;
    return {qa * total[kX], qa * total[kY], qa * total[kZ], qad * total[kRoll], qad * total[kPitch], qad * total[kYaw]};
}

}  // namespace hydroboost
