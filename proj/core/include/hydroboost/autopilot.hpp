#pragma once

#include <array>
#include <vector>

#include "hydroboost/simulation.hpp"

namespace hydroboost {

/// Quadratic weights of the pitch tracker (Bryson-style inverse squared maxima).
struct AutopilotWeights {
    double pitch_rate = 1.0 / (0.35 * 0.35);      ///< on q [1/(rad/s)^2]
    double pitch_error = 1.0 / (0.02 * 0.02);     ///< on theta - theta_ref [1/rad^2]
    double integral = 1.0 / (0.03 * 0.03);        ///< on the integral of the error [1/(rad s)^2]
    double deflection = 1.0 / (0.2094 * 0.2094);  ///< on theta_T [1/rad^2]
};

/**
 * @brief LQ pitch-angle tracker driving the thrust deflection.
 *
 * Feedback theta_T = -(k_q q + k_e e + k_i int e) * T_trim / T with
 * e = theta - theta_ref, saturated to the deflection limit. The T_trim / T
 * factor keeps the commanded pitch acceleration independent of the thrust
 * level; no deflection is commanded without thrust. Gains come from a
 * discrete LQ design on the boost model linearised at u = 85 m/s.
 */
class PitchAutopilot {
public:
    static constexpr double kTrimSpeed = 85.0;    ///< [m/s]
    static constexpr double kTrimAltitude = 300.0;  ///< [m]

    /// Linearises the boost model at (u = 85 m/s, theta = theta0) and solves the LQ problem.
    /// Throws ParameterError when the design does not yield a stable loop.
    static PitchAutopilot synthesize(const VehicleModel& model, double theta0, double max_thrust = 30000.0,
                                     double max_deflection = 0.20943951023931956, const AutopilotWeights& weights = {},
                                     double sample_time = 0.02);

    /// Unsaturated-to-saturated deflection command [rad].
    double command(double q, double error, double integral, double thrust) const;

    /// True when |command| would hit the limit.
    bool saturated(double q, double error, double integral, double thrust) const;

    const std::array<double, 3>& gains() const { return gains_; }
    double trim_thrust() const { return trim_thrust_; }
    double max_deflection() const { return max_deflection_; }

    /// Spectral radius of the discrete closed loop used in the design.
    double closed_loop_radius() const { return radius_; }

private:
    std::array<double, 3> gains_{};
    double trim_thrust_ = 0.0;
    double max_deflection_ = 0.0;
    double min_thrust_ = 0.0;
    double radius_ = 0.0;
};

enum class BoostPlant { simplified, six_dof };

/**
 * @brief Boost flight with open-loop thrust and autopilot-driven deflection.
 *
 * `theta_ref` holds pitch references [rad] on the thrust program's grid.
 * The returned controls are the applied thrust and deflection.
 */
Trajectory<LongitudinalState> closed_loop_boost(const VehicleModel& model, const LongitudinalState& x0,
                                                const ControlProgram& thrust_program,
                                                const std::vector<double>& theta_ref, const PitchAutopilot& autopilot,
                                                double t_final, BoostPlant plant = BoostPlant::simplified,
                                                const IntegratorConfig& config = {});

}  // namespace hydroboost
