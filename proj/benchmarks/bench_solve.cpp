#include <numbers>

#include <benchmark/benchmark.h>

#include "hydroboost/optimal_control.hpp"

using namespace hydroboost;

namespace {

void BM_LaunchSolve(benchmark::State& state) {
    TranscribedProblem pb;
    pb.phase = Phase::launch;
    pb.intervals = 75;
    pb.boundary.initial = {10.0, 0.0, 0.0, 0.0, 100.0};
    pb.boundary.terminal = {35.0, std::nullopt, std::nullopt, state.range(0) * std::numbers::pi / 180.0, 0.0};
    for (auto _ : state) benchmark::DoNotOptimize(solve(pb));
}
BENCHMARK(BM_LaunchSolve)->Arg(45)->Arg(65)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace
BENCHMARK_MAIN();
