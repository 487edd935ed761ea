#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "hydroboost/optimal_control.hpp"
#include "hydroboost/sweep.hpp"

namespace hydroboost {

/// Columns of trajectory CSV files, in order.
inline constexpr const char* kTrajectoryColumns = "t,u,w,q,theta_deg,z,altitude,T,theta_T_deg,event";

/**
 * Trajectory CSV: one row per sample. The event column names the event
 * (surface_crossing, final_time) on the sample where it occurred and is
 * empty elsewhere. An empty trajectory produces the header only.
 */
void write_trajectory_csv(std::ostream& out, const Trajectory<LongitudinalState>& trajectory);
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory<LongitudinalState>& trajectory);
Trajectory<LongitudinalState> read_trajectory_csv(const std::filesystem::path& path);

/// JSON document: cost, status, residuals, control samples, free scalars, iterations.
nlohmann::json to_json(const OptimizationResult& result);
OptimizationResult result_from_json(const nlohmann::json& doc);
void write_result_json(const std::filesystem::path& path, const OptimizationResult& result);
OptimizationResult read_result_json(const std::filesystem::path& path);

/// Sweep CSV: the parameter column, then status, cost, residual, iterations,
/// baseline columns, dominance flag, one column per free scalar and the message.
void write_sweep_csv(std::ostream& out, const SweepTable& table);
void write_sweep_csv(const std::filesystem::path& path, const SweepTable& table);
SweepTable read_sweep_csv(const std::filesystem::path& path);

void write_combined_csv(std::ostream& out, const CombinedCostReport& report);
void write_combined_csv(const std::filesystem::path& path, const CombinedCostReport& report);

}  // namespace hydroboost
