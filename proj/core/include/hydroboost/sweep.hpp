#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hydroboost/scenario.hpp"

namespace hydroboost {

/// Quantity varied by a sweep. Angles in degrees, lengths in metres, times in seconds.
enum class SweepParameter { theta_exit, z0, tf, uf, altitude_f };

const char* to_string(SweepParameter parameter);
SweepParameter sweep_parameter_from_string(const std::string& name);

struct SweepSpec {
    std::string name;
    std::filesystem::path source;
    ScenarioSpec base;
    SweepParameter parameter = SweepParameter::theta_exit;
    std::vector<double> values;
    std::filesystem::path output_dir;  ///< empty: caller decides
};

/**
 * Sweep file keys: name, base (scenario path), parameter, values
 * (comma separated) and optional output. theta_exit sets the terminal
 * pitch of a launch scenario and the initial pitch of a boost scenario.
 */
SweepSpec parse_sweep(const std::filesystem::path& path);
SweepSpec parse_sweep_text(const std::string& text, const std::string& source_name,
                           const std::filesystem::path& base_dir);

/// The base scenario with the swept quantity set to `value`.
ScenarioSpec apply_sweep_value(const ScenarioSpec& base, SweepParameter parameter, double value);

struct SweepRow {
    double value = 0.0;
    std::string status;              ///< solver status or "error"
    double cost = 0.0;               ///< NaN when the row failed before solving
    double max_residual = 0.0;
    int iterations = 0;
    int inner_iterations = 0;
    std::vector<double> free_values; ///< in the base scenario's declaration order
    bool baseline_found = false;
    bool baseline_feasible = false;
    double baseline_cost = 0.0;      ///< NaN when no baseline exists
    std::string message;

    bool converged() const { return status == "converged"; }
    /// Optimal cost within 1% of the baseline or better; only meaningful when the baseline is feasible.
    bool dominates_baseline() const;
};

struct SweepTable {
    SweepParameter parameter = SweepParameter::theta_exit;
    std::vector<FreeKind> free;
    std::vector<SweepRow> rows;
};

/// Solves one row; never throws for solver or model failures.
SweepRow run_sweep_row(const ScenarioSpec& base, SweepParameter parameter, double value);

/**
 * Solves every value independently. Rows come back in input order and do
 * not depend on `jobs` (worker threads, at least 1). `on_row` is called
 * from worker threads after each row finishes.
 */
SweepTable run_sweep(const SweepSpec& spec, int jobs = 1,
                     const std::function<void(std::size_t index, const SweepRow& row)>& on_row = {});

struct CombinedCostRow {
    std::string label;        ///< launch mode
    double theta_exit = 0.0;  ///< [deg]
    double launch_cost = 0.0;
    double boost_cost = 0.0;
    double total = 0.0;
    bool converged = false;   ///< both phases converged
};

struct CombinedCostReport {
    std::vector<CombinedCostRow> rows;
    std::optional<std::size_t> argmin;        ///< among converged horizontal rows
    std::optional<CombinedCostRow> vertical;  ///< vertical launch followed by the 90 deg boost
};

/**
 * Adds launch and boost costs angle by angle. Both tables must sweep
 * theta_exit over the same non-empty value list, otherwise AlignmentError.
 * `vertical_launch_cost`, when given, pairs with the boost row at 90 deg.
 */
CombinedCostReport combined_cost(const SweepTable& launch, const SweepTable& boost,
                                 std::optional<double> vertical_launch_cost = std::nullopt,
                                 bool vertical_converged = true);

}  // namespace hydroboost
