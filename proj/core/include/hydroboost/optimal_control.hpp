#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hydroboost/nlp.hpp"
#include "hydroboost/simulation.hpp"

namespace hydroboost {

enum class Phase { launch, boost };

const char* to_string(Phase phase);

/// Indices into LongitudinalState terminal specifications.
enum StateIndex : int { kU = 0, kW = 1, kQ = 2, kTheta = 3, kDepth = 4 };

/// Initial state plus a fixed value or "free" per terminal component (u, w, q, theta, z).
struct BoundarySpec {
    LongitudinalState initial;
    std::array<std::optional<double>, 5> terminal{};

    int fixed_count() const;
};

struct ControlBounds {
    double thrust_min = 0.0;                        ///< [N]
    double thrust_max = 30000.0;                    ///< [N]
    double deflection_max = 0.20943951023931956;    ///< [rad], 12 deg

    void validate() const;
};

/// r_i of the effort integral; the deflection term only enters when its weight is positive.
struct EffortWeights {
    double thrust = 1.0;
    double deflection = 0.0;
};

/// Boundary quantities that may be optimised alongside the controls.
enum class FreeKind { initial_depth, terminal_velocity, terminal_altitude };

const char* to_string(FreeKind kind);

struct FreeScalar {
    FreeKind kind = FreeKind::terminal_velocity;
    double lower = 0.0;
    double upper = 0.0;
};

/**
 * @brief Direct single-shooting transcription of a minimum-effort problem.
 *
 * Decision vector: thrust samples T_0..T_N, then (boost only) deflection
 * samples, then free scalars. t_f = N dt.
 */
struct TranscribedProblem {
    Phase phase = Phase::launch;
    double dt = 0.2;
    int intervals = 75;
    BoundarySpec boundary;
    ControlBounds bounds;
    EffortWeights weights;
    std::vector<FreeScalar> free;
    VehicleModel model = VehicleModel::standard();
    IntegratorConfig integrator;

    double final_time() const { return dt * intervals; }
    int samples() const { return intervals + 1; }
    int controls_per_sample() const { return phase == Phase::boost ? 2 : 1; }
    int decision_size() const { return controls_per_sample() * samples() + static_cast<int>(free.size()); }

    /// Throws ParameterError when the problem is malformed.
    void validate() const;
};

/// Tolerances and iteration limits of the solver.
struct SolverConfig {
    double constraint_tolerance = 1e-2;   ///< on residuals in m/s, deg, deg/s, m
    double gradient_tolerance = 1e-5;     ///< scaled projected gradient
    double penalty_growth = 10.0;
    double penalty_cap = 1e10;
    int max_outer = 30;
    int max_inner = 100;
    double fd_relative_step = 1e-6;       ///< of each variable's scale
    double thrust_fd_floor = 1e-2;        ///< [N]
};

enum class SolverStatus { converged, infeasible, max_iterations };

const char* to_string(SolverStatus status);

struct TerminalResidual {
    int index = 0;        ///< StateIndex
    double value = 0.0;   ///< natural units (m/s, rad/s, rad, m)
};

struct OptimizationResult {
    SolverStatus status = SolverStatus::max_iterations;
    double cost = 0.0;                   ///< J [N^2 s]
    ControlProgram program;
    std::vector<std::pair<FreeKind, double>> free_values;
    std::vector<TerminalResidual> residuals;
    double max_residual = 0.0;           ///< largest residual in solver units (m/s, deg, deg/s, m)
    int iterations = 0;                  ///< outer iterations
    int inner_iterations = 0;
    LongitudinalState initial_state;
    Trajectory<LongitudinalState> trajectory;
    std::string message;

    bool converged() const { return status == SolverStatus::converged; }
};

/// Trapezoidal effort integral of the program with weights r_i. Needs at least two samples.
double effort_cost(const ControlProgram& program, const EffortWeights& weights = {});

/// Residual vector of the fixed terminal components; `ok` is false when propagation failed.
struct ResidualEvaluation {
    Eigen::VectorXd values;            ///< natural units, one per fixed component
    std::vector<int> indices;
    bool ok = true;
    std::string diagnostic;
};

/// Residual assigned to every component when the propagation fails.
inline constexpr double kFailedResidual = 1e6;

/// Propagates the decision vector (natural units) and compares against the fixed targets.
ResidualEvaluation terminal_residuals(const Eigen::VectorXd& decision, const TranscribedProblem& problem);

/// Control program encoded in a natural-units decision vector.
ControlProgram decode_program(const Eigen::VectorXd& decision, const TranscribedProblem& problem);

/**
 * @brief Solves the transcribed problem.
 *
 * Augmented Lagrangian on the terminal residuals, projected scaled-gradient
 * inner iterations, forward-difference Jacobians. Controls stay inside
 * their bounds by projection. The start is the constant-thrust baseline
 * for the terminal forward velocity (mid-range thrust if none exists) with
 * zero deflection and free scalars at mid-box, unless `initial_guess` is given.
 * A boost solve from that default start which does not converge is rerun
 * once from an autopilot-flown pitch program; the better result is kept.
 */
OptimizationResult solve(const TranscribedProblem& problem, const SolverConfig& config = {},
                         const std::optional<Eigen::VectorXd>& initial_guess = std::nullopt);

/// Same solver; requires at least one free scalar with a finite box.
OptimizationResult solve_with_free_parameters(const TranscribedProblem& problem, const SolverConfig& config = {});

struct BaselineResult {
    bool found = false;          ///< bisection bracketed the selected component
    bool feasible = false;       ///< every fixed terminal component is met within tolerance
    double thrust = 0.0;         ///< [N]
    double cost = 0.0;           ///< [N^2 s]
    std::vector<TerminalResidual> residuals;
};

/**
 * @brief Constant thrust meeting one terminal component, by bisection to 1e-3 N.
 *
 * Free scalars take their mid-box values; deflection is zero. `found` is
 * false when the component does not change sign over the thrust bounds.
 */
BaselineResult constant_thrust_baseline(const TranscribedProblem& problem, int component = kU,
                                        double tolerance = 1e-2);

}  // namespace hydroboost
