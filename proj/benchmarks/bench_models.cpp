#include <numbers>

#include <benchmark/benchmark.h>

#include "hydroboost/phase_models.hpp"
#include "hydroboost/simulation.hpp"

using namespace hydroboost;

namespace {

const VehicleModel& model() {
    static const VehicleModel m = VehicleModel::standard();
    return m;
}

void BM_AddedMass(benchmark::State& state) {
    const VehicleParams p;
    for (auto _ : state) benchmark::DoNotOptimize(derive_added_mass(p, 1023.0));
}
BENCHMARK(BM_AddedMass);

void BM_LaunchDerivative(benchmark::State& state) {
    const LongitudinalState x{20.0, 0.5, 0.02, 0.3, 60.0};
    for (auto _ : state) benchmark::DoNotOptimize(launch_derivative(x, 14000.0, model()));
}
BENCHMARK(BM_LaunchDerivative);

void BM_BoostDerivative(benchmark::State& state) {
    const LongitudinalState x{80.0, 1.0, 0.01, 0.6, -200.0};
    for (auto _ : state) benchmark::DoNotOptimize(boost_derivative(x, {20000.0, 0.05}, model()));
}
BENCHMARK(BM_BoostDerivative);

void BM_SixDofDerivative(benchmark::State& state) {
    const auto x = embed(LongitudinalState{20.0, 0.5, 0.02, 0.3, 60.0});
    for (auto _ : state) benchmark::DoNotOptimize(six_dof_derivative(x, {14000.0, 0.0, 0.0}, model()));
}
BENCHMARK(BM_SixDofDerivative);

void BM_LaunchPropagation(benchmark::State& state) {
    const auto program = ControlProgram::constant(0.2, 15.0, {14000.0, 0.0});
    const LongitudinalState x0{10.0, 0.0, 0.0, 0.0, 100.0};
    for (auto _ : state) benchmark::DoNotOptimize(simulate_launch(model(), x0, program, 15.0));
}
BENCHMARK(BM_LaunchPropagation)->Unit(benchmark::kMicrosecond);

}  // namespace
