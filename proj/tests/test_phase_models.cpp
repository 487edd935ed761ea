#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hydroboost/error.hpp"
#include "hydroboost/phase_models.hpp"

using namespace hydroboost;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double scaled_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); }

}  // namespace

// Nearly at rest, level, no incidence: only thrust, weight, buoyancy and the
// buoyancy moment act, so u' and the coupled (w', q') follow by hand.
TEST(LaunchModel, StaticBalanceNearRest) {
    const VehicleModel model = VehicleModel::standard();
    const auto& p = model.params;
    const auto& a = model.added_mass;
    const double g = model.environment.gravity;
    const double weight = p.mass * g;
    const double buoyancy = model.environment.water_density * g * p.volume;

    const LongitudinalState x{1e-6, 0.0, 0.0, 0.0, 50.0};
    const LongitudinalState d = launch_derivative(x, 10000.0, model);
    EXPECT_NEAR(d.u, 10000.0 / (p.mass - a.x_udot), 1e-6);

    const double m11 = p.mass - a.z_wdot, m12 = -a.z_qdot, m21 = -a.m_wdot, m22 = p.inertia_y - a.m_qdot;
    const double rz = weight - buoyancy;
    const double rm = p.buoyancy_arm() * buoyancy;
    const double det = m11 * m22 - m12 * m21;
    EXPECT_NEAR(d.w, (rz * m22 - m12 * rm) / det, 1e-9);
    EXPECT_NEAR(d.q, (m11 * rm - m21 * rz) / det, 1e-9);
    EXPECT_GT(d.q, 0.0) << "buoyancy ahead of the cg pitches the nose up";
    EXPECT_NEAR(d.theta, 0.0, 1e-15);
    EXPECT_NEAR(d.z, 0.0, 1e-12);
}

TEST(LaunchModel, RejectsNonPositiveForwardSpeed) {
    const VehicleModel model = VehicleModel::standard();
    EXPECT_THROW(launch_derivative({0.0, 0.0, 0.0, 0.0, 50.0}, 1000.0, model), SingularityError);
}

TEST(BoostModel, LevelCoastAtSeaLevel) {
    const VehicleModel model = VehicleModel::standard();
    const auto& p = model.params;
    const LongitudinalState x{100.0, 0.0, 0.0, 0.0, 0.0};
    const LongitudinalState d = boost_derivative(x, {0.0, 0.0}, model);
    const double drag = 0.5 * 1.225 * 100.0 * 100.0 * p.reference_area * 0.10;
    EXPECT_NEAR(d.u, -drag / p.mass, 1e-4);
    EXPECT_NEAR(d.w, model.environment.gravity, 1e-9);
    EXPECT_NEAR(d.z, 0.0, 1e-12);
}

TEST(BoostModel, DeflectionPitchesNoseUpWhenPositive) {
    const VehicleModel model = VehicleModel::standard();
    const LongitudinalState x{80.0, 0.0, 0.0, 30.0 * kDeg, -100.0};
    const double q_plus = boost_derivative(x, {20000.0, 5.0 * kDeg}, model).q;
    const double q_zero = boost_derivative(x, {20000.0, 0.0}, model).q;
    EXPECT_NE(q_plus, q_zero);
    // Thrust acts at the aft end, so the deflection moment is T l_x theta_T.
    const double expected = 20000.0 * model.params.thrust_arm * 5.0 * kDeg / model.params.inertia_y;
    EXPECT_NEAR(q_plus - q_zero, expected, 1e-9 * std::abs(expected) + 1e-12);
}

TEST(BoostModel, KinematicsFollowPitch) {
    const VehicleModel model = VehicleModel::standard();
    const LongitudinalState x{120.0, 2.0, 0.1, 40.0 * kDeg, -250.0};
    const LongitudinalState d = boost_derivative(x, {15000.0, 0.0}, model);
    EXPECT_DOUBLE_EQ(d.theta, 0.1);
    EXPECT_NEAR(d.z, -120.0 * std::sin(40.0 * kDeg) + 2.0 * std::cos(40.0 * kDeg), 1e-12);
}

// The full model reduces to the phase models under the matched options.
TEST(Consistency, LaunchAndBoostMatchSixDofComponents) {
    const VehicleModel model = VehicleModel::standard();
    std::mt19937_64 rng(42);
    auto uni = [&rng](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    for (int i = 0; i < 100; ++i) {
        const LongitudinalState xl{uni(5, 60), uni(-3, 3), uni(-0.5, 0.5), uni(-80, 80) * kDeg, uni(1, 300)};
        const double thrust = uni(0, 30000);
        const LongitudinalState dl = launch_derivative(xl, thrust, model);
        const LongitudinalState fl = project(six_dof_derivative(embed(xl), {thrust, 0.0, 0.0}, model, matched_options()));
        for (int k = 0; k < 5; ++k) EXPECT_LT(scaled_gap(dl[k], fl[k]), 1e-9) << "launch sample " << i << " k " << k;

        const LongitudinalState xb{uni(30, 250), uni(-5, 5), uni(-0.5, 0.5), uni(-80, 80) * kDeg, -uni(1, 10000)};
        const BoostControl c{uni(0, 30000), uni(-12, 12) * kDeg};
        const LongitudinalState db = boost_derivative(xb, c, model);
        const LongitudinalState fb =
            project(six_dof_derivative(embed(xb), {c.thrust, c.deflection, 0.0}, model, matched_options()));
        for (int k = 0; k < 5; ++k) EXPECT_LT(scaled_gap(db[k], fb[k]), 1e-9) << "boost sample " << i << " k " << k;
    }
}

TEST(SixDof, EmbedAndProjectRoundTrip) {
    const LongitudinalState x{20.0, 1.0, 0.2, 0.3, 40.0};
    EXPECT_EQ(project(embed(x)), x);
}

TEST(SixDof, VerticalPitchWithRollIsSingular) {
    const VehicleModel model = VehicleModel::standard();
    BodyState6DOF s = embed({20.0, 0.0, 0.0, 90.0 * kDeg, 50.0});
    s.roll = 0.1;
    EXPECT_THROW(six_dof_derivative(s, {}, model), SingularityError);
}

TEST(SixDof, LateralPlaneStaysQuietWithoutLateralInput) {
    const VehicleModel model = VehicleModel::standard();
    const BodyState6DOF d = six_dof_derivative(embed({25.0, 0.5, 0.05, 0.4, 80.0}), {12000.0, 0.0, 0.0}, model);
    EXPECT_NEAR(d.v, 0.0, 1e-12);
    EXPECT_NEAR(d.p, 0.0, 1e-12);
    EXPECT_NEAR(d.r, 0.0, 1e-12);
    EXPECT_NEAR(d.east, 0.0, 1e-12);
}
