#pragma once

#include <array>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hydroboost/optimal_control.hpp"

namespace hydroboost {

enum class ScenarioPhase { launch, boost, combined };
enum class LaunchMode { horizontal, vertical };

const char* to_string(ScenarioPhase phase);
const char* to_string(LaunchMode mode);

/// Open-loop program used by `simulate`: constant values or a CSV file (t, T, theta_T_deg).
struct ProgramSpec {
    double thrust = 0.0;                        ///< [N]
    double deflection = 0.0;                    ///< [rad]
    std::optional<std::filesystem::path> file;
};

/**
 * @brief A fully validated scenario.
 *
 * Terminal components hold a fixed value or nullopt for "free". Angles are
 * stored in radians; z is positive down (altitude = -z).
 */
struct ScenarioSpec {
    std::string name;
    std::filesystem::path source;
    ScenarioPhase phase = ScenarioPhase::launch;
    LaunchMode launch_mode = LaunchMode::horizontal;
    LongitudinalState initial;
    std::array<std::optional<double>, 5> terminal{};
    double final_time = 0.0;
    double dt = 0.2;
    IntegratorConfig integrator;
    ControlBounds bounds;
    EffortWeights weights;
    std::vector<FreeScalar> free;
    VehicleParams vehicle;
    EnvironmentModel environment;
    AnalyticCoefficients analytic;
    std::optional<std::filesystem::path> coefficient_table;
    std::shared_ptr<const CoefficientTable> table;  ///< loaded at parse time
    SolverConfig solver;
    ProgramSpec program;

    /// Combined scenarios only: launch and boost scenario files, the water-exit
    /// angles [deg] to pair, and an optional vertical launch scenario.
    std::filesystem::path launch_file;
    std::filesystem::path boost_file;
    std::filesystem::path vertical_file;
    std::vector<double> angles;

    int intervals() const;
    Phase optimal_control_phase() const;

    /// Vehicle model with the scenario's parameters, environment and coefficients.
    VehicleModel model() const;

    /// Transcription of a launch or boost scenario.
    TranscribedProblem problem() const;
    TranscribedProblem problem(const VehicleModel& model) const;
};

/**
 * Reads a key = value scenario file with [section] headers. Relative paths
 * inside are resolved against the file's directory. Throws ParseError
 * (with line and field) on unknown keys, bad values, missing files or a
 * final time that is not a multiple of dt.
 */
ScenarioSpec parse_scenario(const std::filesystem::path& path);

/// Same, from text; `base_dir` resolves relative paths.
ScenarioSpec parse_scenario_text(const std::string& text, const std::string& source_name,
                                 const std::filesystem::path& base_dir);

/// Program samples for `simulate` on the scenario's dt grid.
ControlProgram build_program(const ScenarioSpec& spec);

/// Key = value document with sections, preserving line numbers.
struct KeyValueEntry {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
};

std::vector<KeyValueEntry> read_key_values(const std::string& text, const std::string& source_name);

}  // namespace hydroboost
