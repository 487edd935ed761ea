#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hydroboost/error.hpp"
#include "hydroboost/optimal_control.hpp"
#include "hydroboost/verification.hpp"

using namespace hydroboost;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

TranscribedProblem launch_problem(double theta_exit_deg) {
    TranscribedProblem pb;
    pb.phase = Phase::launch;
    pb.intervals = 75;
    pb.boundary.initial = {10.0, 0.0, 0.0, 0.0, 100.0};
    pb.boundary.terminal = {35.0, std::nullopt, std::nullopt, theta_exit_deg * kDeg, 0.0};
    return pb;
}

}  // namespace

TEST(EffortCost, ConstantThrustIsExact) {
    EXPECT_DOUBLE_EQ(effort_cost(ControlProgram::constant(0.2, 0.4, {1000.0, 0.0})), 4.0e5);
}

TEST(EffortCost, RampErrorEqualsTheSecondDerivativeBound) {
    // T = 1000 t on [0, 1]: exact integral 1e6 / 3, trapezoid error h^2/12 * 2e6.
    std::vector<ControlSample> s;
    for (int k = 0; k <= 5; ++k) s.push_back({1000.0 * 0.2 * k, 0.0});
    const double j = effort_cost(ControlProgram(0.2, s));
    EXPECT_NEAR(j - 1.0e6 / 3.0, 0.04 / 12.0 * 2.0e6, 1e-6);
}

TEST(EffortCost, DeflectionWeightAddsItsTerm) {
    const ControlProgram prog = ControlProgram::constant(0.2, 1.0, {100.0, 0.1});
    EXPECT_DOUBLE_EQ(effort_cost(prog, {1.0, 0.0}), 1.0e4);
    EXPECT_NEAR(effort_cost(prog, {1.0, 50.0}), 1.0e4 + 50.0 * 0.01, 1e-9);
    EXPECT_THROW(effort_cost(ControlProgram(0.2, {{1.0, 0.0}})), ParameterError);
}

TEST(Oracle, DoubleIntegratorMinimumEffort) {
    // u* = 6 - 12 t, J* = integral of u*^2 over [0, 1] = 12.
    const OracleCheck c = double_integrator_oracle();
    EXPECT_TRUE(c.passed) << c.detail;
    EXPECT_NEAR(c.value, 12.0, 0.12);
}

TEST(Oracle, SuiteRunsAndPasses) {
    for (const auto& c : run_oracles()) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Transcription, DecodeLaysOutThrustThenDeflection) {
    TranscribedProblem pb;
    pb.phase = Phase::boost;
    pb.intervals = 2;
    pb.boundary.terminal = {135.0, std::nullopt, std::nullopt, 0.0, -600.0};
    Eigen::VectorXd d(6);
    d << 1.0, 2.0, 3.0, 0.01, 0.02, 0.03;
    const ControlProgram prog = decode_program(d, pb);
    ASSERT_EQ(prog.size(), 3u);
    EXPECT_EQ(prog.samples()[2].thrust, 3.0);
    EXPECT_EQ(prog.samples()[1].deflection, 0.02);
    EXPECT_EQ(pb.decision_size(), 6);
}

TEST(Transcription, ValidationCatchesMalformedProblems) {
    TranscribedProblem pb = launch_problem(45.0);
    pb.intervals = 1;
    EXPECT_THROW(pb.validate(), ParameterError);
    pb = launch_problem(45.0);
    pb.bounds.thrust_max = -1.0;
    EXPECT_THROW(pb.validate(), ParameterError);
    pb = launch_problem(45.0);
    pb.free.push_back({FreeKind::terminal_altitude, 100.0, 200.0});
    EXPECT_THROW(pb.validate(), ParameterError) << "terminal altitude is a boost quantity";
}

TEST(Transcription, ResidualsOfAConstantProgramMatchSimulation) {
    const TranscribedProblem pb = launch_problem(45.0);
    Eigen::VectorXd d = Eigen::VectorXd::Constant(pb.decision_size(), 14000.0);
    const ResidualEvaluation r = terminal_residuals(d, pb);
    ASSERT_TRUE(r.ok);
    ASSERT_EQ(r.indices.size(), 3u);
    const auto traj = simulate_launch(pb.model, pb.boundary.initial, decode_program(d, pb), 15.0);
    EXPECT_NEAR(r.values(0), traj.final_state().u - 35.0, 1e-9);
    EXPECT_NEAR(r.values(2), traj.final_state().z, 1e-9);
}

TEST(Baseline, BisectionHitsTheVelocityTarget) {
    const TranscribedProblem pb = launch_problem(45.0);
    const BaselineResult b = constant_thrust_baseline(pb);
    ASSERT_TRUE(b.found);
    ASSERT_FALSE(b.residuals.empty());
    EXPECT_LT(std::abs(b.residuals[0].value), 1e-2);
    EXPECT_NEAR(b.cost, b.thrust * b.thrust * 15.0, 1e-6 * b.cost);
}

TEST(Solve, LaunchResultRespectsBoundsAndTargets) {
    const TranscribedProblem pb = launch_problem(45.0);
    const OptimizationResult r = solve(pb);
    ASSERT_TRUE(r.converged()) << r.message;
    for (const auto& s : r.program.samples()) {
        EXPECT_GE(s.thrust, 0.0);
        EXPECT_LE(s.thrust, 30000.0);
        EXPECT_EQ(s.deflection, 0.0);
    }
    EXPECT_LE(r.max_residual, 1e-2);
    EXPECT_NEAR(r.cost, effort_cost(r.program), 1e-6 * r.cost);
    EXPECT_NEAR(r.trajectory.final_state().theta, 45.0 * kDeg, 1e-2 * kDeg);
}

TEST(Solve, ZeroOrderHoldIsAlsoSupported) {
    TranscribedProblem pb = launch_problem(55.0);
    pb.integrator.interpolation = Interpolation::zero_order_hold;
    const OptimizationResult r = solve(pb);
    EXPECT_TRUE(r.converged()) << r.message;
}

TEST(Solve, FreeTerminalVelocitySettlesOnTheLowerEdge) {
    TranscribedProblem pb = launch_problem(55.0);
    pb.free.push_back({FreeKind::terminal_velocity, 30.0, 40.0});
    const OptimizationResult r = solve_with_free_parameters(pb);
    ASSERT_TRUE(r.converged()) << r.message;
    ASSERT_EQ(r.free_values.size(), 1u);
    EXPECT_NEAR(r.free_values[0].second, 30.0, 0.1);
}

TEST(Solve, FreeParameterSolverNeedsAFreeScalar) {
    EXPECT_THROW(solve_with_free_parameters(launch_problem(45.0)), ParameterError);
}
