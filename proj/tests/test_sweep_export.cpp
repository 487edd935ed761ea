#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "hydroboost/error.hpp"
#include "hydroboost/export.hpp"
#include "hydroboost/sweep.hpp"

using namespace hydroboost;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = HYDROBOOST_SCENARIO_DIR;

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("hydroboost_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

SweepSpec launch_angles(std::vector<double> values) {
    SweepSpec s;
    s.name = "angles";
    s.base = parse_scenario(kScenarios / "launch_45deg.scn");
    s.parameter = SweepParameter::theta_exit;
    s.values = std::move(values);
    return s;
}

std::string csv_text(const SweepTable& t) {
    std::ostringstream out;
    write_sweep_csv(out, t);
    return out.str();
}

SweepTable table_of(std::vector<double> values, std::vector<double> costs) {
    SweepTable t;
    for (std::size_t i = 0; i < values.size(); ++i) {
        SweepRow r;
        r.value = values[i];
        r.cost = costs[i];
        r.status = "converged";
        t.rows.push_back(r);
    }
    return t;
}

}  // namespace

TEST(Export, TrajectoryRoundTrip) {
    Trajectory<LongitudinalState> t;
    for (int k = 0; k < 4; ++k) {
        t.times.push_back(0.2 * k);
        t.states.push_back({10.0 + k / 3.0, 0.1 * k, -0.01 * k, 0.123456789 * k, 100.0 - 7.77 * k});
        t.controls.push_back({1000.0 * k + 0.5, 0.001 * k});
    }
    t.events.push_back({t.times[3], EventKind::surface_crossing});
    const fs::path file = scratch("traj") / "t.csv";
    write_trajectory_csv(file, t);
    const auto back = read_trajectory_csv(file);
    ASSERT_EQ(back.times.size(), 4u);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(back.times[k], t.times[k], 1e-12);
        for (int i = 0; i < 5; ++i) EXPECT_NEAR(back.states[k][i], t.states[k][i], 1e-12);
        EXPECT_NEAR(back.controls[k].thrust, t.controls[k].thrust, 1e-12);
        EXPECT_NEAR(back.controls[k].deflection, t.controls[k].deflection, 1e-12);
    }
    ASSERT_EQ(back.events.size(), 1u);
    EXPECT_EQ(back.events[0].kind, EventKind::surface_crossing);
}

TEST(Export, EmptyTrajectoryIsHeaderOnly) {
    std::ostringstream out;
    write_trajectory_csv(out, Trajectory<LongitudinalState>{});
    EXPECT_EQ(out.str(), std::string(kTrajectoryColumns) + "\n");
}

TEST(Export, ResultJsonRoundTrip) {
    const ScenarioSpec s = parse_scenario(kScenarios / "launch_45deg_free_uf.scn");
    const OptimizationResult r = solve_with_free_parameters(s.problem(), s.solver);
    const fs::path file = scratch("json") / "r.json";
    write_result_json(file, r);
    const OptimizationResult back = read_result_json(file);
    EXPECT_EQ(back.status, r.status);
    EXPECT_NEAR(back.cost, r.cost, 1e-12 * r.cost);
    ASSERT_EQ(back.program.size(), r.program.size());
    for (std::size_t k = 0; k < r.program.size(); ++k)
        EXPECT_NEAR(back.program.samples()[k].thrust, r.program.samples()[k].thrust, 1e-12 * 30000.0);
    ASSERT_EQ(back.free_values.size(), 1u);
    EXPECT_EQ(back.free_values[0].first, FreeKind::terminal_velocity);
    EXPECT_NEAR(back.free_values[0].second, r.free_values[0].second, 1e-12);
    const auto doc = to_json(r);
    EXPECT_TRUE(doc.contains("residuals"));
    EXPECT_TRUE(doc.contains("iterations"));
}

TEST(Export, WritingIntoAMissingFileNamesThePath) {
    const fs::path dir = scratch("ioerr");
    {
        std::ofstream(dir / "blocker") << "x";
    }
    try {
        write_trajectory_csv(dir / "blocker" / "t.csv", Trajectory<LongitudinalState>{});
        FAIL() << "expected an I/O error";
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find("blocker"), std::string::npos);
    }
}

TEST(Sweep, ParseFileResolvesTheBase) {
    const SweepSpec s = parse_sweep(fs::path(HYDROBOOST_SWEEP_DIR) / "launch_theta_exit.sweep");
    EXPECT_EQ(s.parameter, SweepParameter::theta_exit);
    EXPECT_EQ(s.values.size(), 7u);
    EXPECT_EQ(s.base.name, "launch_45deg");
}

TEST(Sweep, ParseRejectsEmptyAndNonFiniteValues) {
    const std::string base = "base = " + (kScenarios / "launch_45deg.scn").string() + "\nparameter = uf\n";
    const fs::path dir = fs::temp_directory_path();
    EXPECT_THROW(parse_sweep_text(base + "values =\n", "s.sweep", dir), ParseError);
    EXPECT_THROW(parse_sweep_text(base + "values = 30, nan\n", "s.sweep", dir), ParseError);
    EXPECT_THROW(parse_sweep_text(base + "values = 30, inf\n", "s.sweep", dir), ParseError);
    EXPECT_THROW(parse_sweep_text(base + "values = 30\nparameter = tf\n", "s.sweep", dir), ParseError);
    EXPECT_NO_THROW(parse_sweep_text(base + "values = 30, 35\n", "s.sweep", dir));
}

TEST(Sweep, FinalTimeValuesMustFitTheGrid) {
    const ScenarioSpec base = parse_scenario(kScenarios / "launch_45deg.scn");
    EXPECT_THROW(apply_sweep_value(base, SweepParameter::tf, 15.1), ParameterError);
    EXPECT_EQ(apply_sweep_value(base, SweepParameter::tf, 14.0).intervals(), 70);
}

TEST(Sweep, SingleValueMatchesPlainOptimize) {
    const SweepTable t = run_sweep(launch_angles({55.0}));
    const ScenarioSpec s = apply_sweep_value(parse_scenario(kScenarios / "launch_45deg.scn"),
                                             SweepParameter::theta_exit, 55.0);
    const OptimizationResult r = solve(s.problem(), s.solver);
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(t.rows[0].cost, r.cost);
    EXPECT_EQ(t.rows[0].status, to_string(r.status));
}

TEST(Sweep, RowsAreIndependentAndThreadCountInvariant) {
    const SweepTable all = run_sweep(launch_angles({35.0, 55.0, 75.0}), 1);
    const SweepTable parallel = run_sweep(launch_angles({35.0, 55.0, 75.0}), 3);
    EXPECT_EQ(csv_text(all), csv_text(parallel));
    const SweepTable fewer = run_sweep(launch_angles({35.0, 75.0}), 2);
    EXPECT_EQ(fewer.rows[0].cost, all.rows[0].cost);
    EXPECT_EQ(fewer.rows[1].cost, all.rows[2].cost);
}

TEST(Sweep, FailuresAreRecordedPerRow) {
    const SweepTable t = run_sweep(launch_angles({20.0, 45.0}));
    EXPECT_FALSE(t.rows[0].converged());
    EXPECT_TRUE(t.rows[1].converged());
}

TEST(Sweep, CsvColumnOrder) {
    SweepTable t = table_of({1.0}, {2.0});
    t.parameter = SweepParameter::uf;
    t.free = {FreeKind::initial_depth};
    t.rows[0].free_values = {120.0};
    const std::string text = csv_text(t);
    const std::string header = text.substr(0, text.find('\n'));
    EXPECT_EQ(header,
              "uf,status,cost,max_residual,iterations,inner_iterations,baseline_found,baseline_feasible,"
              "baseline_cost,dominates_baseline,initial_depth,message");
    const fs::path file = scratch("sweepcsv") / "s.csv";
    write_sweep_csv(file, t);
    const SweepTable back = read_sweep_csv(file);
    EXPECT_EQ(back.parameter, SweepParameter::uf);
    ASSERT_EQ(back.rows.size(), 1u);
    EXPECT_EQ(back.rows[0].cost, 2.0);
    EXPECT_EQ(back.rows[0].free_values.at(0), 120.0);
}

TEST(Combined, TotalsAreExactSums) {
    const SweepTable l = table_of({45.0, 55.0, 90.0}, {1.1, 0.7, 2.3});
    const SweepTable b = table_of({45.0, 55.0, 90.0}, {5.2, 5.9, 5.9});
    const CombinedCostReport r = combined_cost(l, b, 1.5);
    ASSERT_EQ(r.rows.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(r.rows[i].total, l.rows[i].cost + b.rows[i].cost);
    ASSERT_TRUE(r.argmin);
    EXPECT_EQ(*r.argmin, 0u);
    ASSERT_TRUE(r.vertical);
    EXPECT_EQ(r.vertical->label, "vertical");
    EXPECT_EQ(r.vertical->total, 1.5 + 5.9);
}

TEST(Combined, AlignmentErrors) {
    const SweepTable l = table_of({45.0, 55.0}, {1.0, 1.0});
    EXPECT_THROW(combined_cost(l, table_of({}, {})), AlignmentError);
    EXPECT_THROW(combined_cost(l, table_of({45.0, 65.0}, {1.0, 1.0})), AlignmentError);
    EXPECT_THROW(combined_cost(l, table_of({45.0}, {1.0})), AlignmentError);
    EXPECT_THROW(combined_cost(l, table_of({45.0, 55.0}, {1.0, 1.0}), 2.0), AlignmentError) << "no 90 deg row";
}

TEST(Combined, UnconvergedRowsAreNeverTheMinimum) {
    SweepTable l = table_of({45.0, 55.0}, {0.1, 1.0});
    l.rows[0].status = "infeasible";
    const CombinedCostReport r = combined_cost(l, table_of({45.0, 55.0}, {1.0, 1.0}));
    ASSERT_TRUE(r.argmin);
    EXPECT_EQ(*r.argmin, 1u);
    std::ostringstream out;
    write_combined_csv(out, r);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
              "launch_mode,theta_exit_deg,launch_cost,boost_cost,total,converged,minimum");
}
