// hydroboost command-line front end.
//
// Exit codes: 0 success, 1 usage / parse / I/O error, 2 solver did not converge.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hydroboost/export.hpp"
#include "hydroboost/scenario.hpp"
#include "hydroboost/sweep.hpp"
#include "hydroboost/verification.hpp"

namespace fs = std::filesystem;
using namespace hydroboost;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNotConverged = 2;
constexpr double kRad = 180.0 / 3.14159265358979323846;

int jobs_from_env(int fallback) {
    const char* env = std::getenv("HYDROBOOST_JOBS");
    if (!env || !*env) return fallback;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 1024) throw ParameterError("HYDROBOOST_JOBS must be a positive integer");
    return static_cast<int>(v);
}

fs::path output_dir(const std::string& flag, const fs::path& fallback = {}) {
    if (!flag.empty()) return flag;
    if (!fallback.empty()) return fallback;
    return fs::current_path();
}

void print_result(const std::string& name, const OptimizationResult& r) {
    std::printf("%s: %s  J = %.6e N^2 s  max residual = %.3e  iterations = %d/%d\n", name.c_str(),
                to_string(r.status), r.cost, r.max_residual, r.iterations, r.inner_iterations);
    for (const auto& [kind, value] : r.free_values) std::printf("  %s = %.6g\n", to_string(kind), value);
    if (!r.message.empty()) std::printf("  %s\n", r.message.c_str());
}

int cmd_simulate(const std::string& path, const std::string& out, bool six_dof) {
    const ScenarioSpec spec = parse_scenario(path);
    if (spec.phase == ScenarioPhase::combined) throw ParameterError("simulate needs a launch or boost scenario");
    const VehicleModel model = spec.model();
    const ControlProgram program = build_program(spec);
    const bool launch = spec.phase == ScenarioPhase::launch;

    Trajectory<LongitudinalState> traj;
    if (six_dof) {
        traj = project(simulate_six_dof(model, embed(spec.initial), program, spec.final_time, spec.integrator, {},
                                        launch));
    } else if (launch) {
        traj = simulate_launch(model, spec.initial, program, spec.final_time, spec.integrator, true);
    } else {
        traj = simulate_boost(model, spec.initial, program, spec.final_time, spec.integrator);
    }

    const fs::path file = output_dir(out) / (spec.name + (six_dof ? "_six_dof" : "") + "_trajectory.csv");
    write_trajectory_csv(file, traj);
    const LongitudinalState& xf = traj.final_state();
    std::printf("%s: t = %.3f s  u = %.4f m/s  w = %.4f m/s  q = %.4f deg/s  theta = %.4f deg  z = %.4f m\n",
                spec.name.c_str(), traj.final_time(), xf.u, xf.w, xf.q * kRad, xf.theta * kRad, xf.z);
    for (const Event& e : traj.events) std::printf("  event %s at %.4f s\n", to_string(e.kind), e.time);
    std::printf("  cost of the program: %.6e N^2 s\n", effort_cost(program, spec.weights));
    std::printf("  wrote %s\n", file.string().c_str());
    return kOk;
}

SweepSpec angle_sweep(const fs::path& scenario, const std::vector<double>& angles) {
    SweepSpec s;
    s.base = parse_scenario(scenario);
    s.name = s.base.name;
    s.parameter = SweepParameter::theta_exit;
    s.values = angles;
    return s;
}

int cmd_combined(const ScenarioSpec& spec, const fs::path& dir, int jobs) {
    auto progress = [](const char* phase) {
        return [phase](std::size_t, const SweepRow& row) {
            static std::mutex m;
            const std::lock_guard lock(m);
            std::printf("  %s %6.1f deg: %s J = %.6e\n", phase, row.value, row.status.c_str(), row.cost);
            std::fflush(stdout);
        };
    };
    const SweepTable launch = run_sweep(angle_sweep(spec.launch_file, spec.angles), jobs, progress("launch"));
    const SweepTable boost = run_sweep(angle_sweep(spec.boost_file, spec.angles), jobs, progress("boost"));
    write_sweep_csv(dir / (spec.name + "_launch.csv"), launch);
    write_sweep_csv(dir / (spec.name + "_boost.csv"), boost);

    std::optional<double> vertical_cost;
    bool vertical_ok = true;
    if (!spec.vertical_file.empty()) {
        const ScenarioSpec v = parse_scenario(spec.vertical_file);
        const TranscribedProblem pb = v.problem();
        const OptimizationResult r = pb.free.empty() ? solve(pb, v.solver) : solve_with_free_parameters(pb, v.solver);
        print_result(v.name, r);
        write_result_json(dir / (spec.name + "_vertical.json"), r);
        vertical_cost = r.cost;
        vertical_ok = r.converged();
    }

    const CombinedCostReport report = combined_cost(launch, boost, vertical_cost, vertical_ok);
    const fs::path file = dir / (spec.name + "_combined.csv");
    write_combined_csv(file, report);
    std::printf("%-10s %8s %14s %14s %14s  %s\n", "mode", "angle", "launch", "boost", "total", "converged");
    auto row = [](const CombinedCostRow& r, bool best) {
        std::printf("%-10s %8.1f %14.6e %14.6e %14.6e  %s%s\n", r.label.c_str(), r.theta_exit, r.launch_cost,
                    r.boost_cost, r.total, r.converged ? "yes" : "no", best ? "  <- minimum" : "");
    };
    for (std::size_t i = 0; i < report.rows.size(); ++i) row(report.rows[i], report.argmin == i);
    if (report.vertical) row(*report.vertical, false);
    std::printf("  wrote %s\n", file.string().c_str());
    return report.argmin && (!report.vertical || report.vertical->converged) ? kOk : kNotConverged;
}

int cmd_optimize(const std::string& path, const std::string& out, int jobs) {
    const ScenarioSpec spec = parse_scenario(path);
    const fs::path dir = output_dir(out);
    if (spec.phase == ScenarioPhase::combined) return cmd_combined(spec, dir, jobs);

    const TranscribedProblem pb = spec.problem();
    const OptimizationResult r = pb.free.empty() ? solve(pb, spec.solver) : solve_with_free_parameters(pb, spec.solver);
    print_result(spec.name, r);
    const BaselineResult b = constant_thrust_baseline(pb, kU, spec.solver.constraint_tolerance);
    if (b.found)
        std::printf("  constant-thrust baseline: T = %.1f N  J = %.6e N^2 s  %s\n", b.thrust, b.cost,
                    b.feasible ? "feasible" : "misses the other terminal targets");
    write_result_json(dir / (spec.name + ".json"), r);
    write_trajectory_csv(dir / (spec.name + "_trajectory.csv"), r.trajectory);
    std::printf("  wrote %s\n", (dir / (spec.name + ".json")).string().c_str());
    return r.converged() ? kOk : kNotConverged;
}

int cmd_sweep(const std::string& path, const std::string& out, int jobs) {
    const SweepSpec spec = parse_sweep(path);
    std::mutex m;
    const SweepTable table = run_sweep(spec, jobs, [&](std::size_t, const SweepRow& row) {
        const std::lock_guard lock(m);
        std::printf("  %s = %g: %s J = %.6e\n", to_string(spec.parameter), row.value, row.status.c_str(), row.cost);
        std::fflush(stdout);
    });
    const fs::path file = output_dir(out, spec.output_dir) / (spec.name + ".csv");
    write_sweep_csv(file, table);
    int converged = 0;
    for (const auto& row : table.rows) converged += row.converged() ? 1 : 0;
    std::printf("%s: %d of %zu rows converged\n  wrote %s\n", spec.name.c_str(), converged, table.rows.size(),
                file.string().c_str());
    return converged == static_cast<int>(table.rows.size()) ? kOk : kNotConverged;
}

int cmd_params(double rho) {
    const AddedMassSet a = derive_added_mass(VehicleParams{}, rho);
    struct Line {
        const char* name;
        double value;
        double reference;
    };
    // Reference set for the default vehicle in seawater.
    const Line lines[] = {
        {"X_udot", a.x_udot, -10.5294}, {"Y_vdot", a.y_vdot, -1296.5}, {"Z_wdot", a.z_wdot, -1296.5},
        {"K_pdot", a.k_pdot, 0.0},      {"M_qdot", a.m_qdot, -3936.7}, {"N_rdot", a.n_rdot, -3936.7},
        {"Y_rdot", a.y_rdot, -99.4382}, {"N_vdot", a.n_vdot, -99.4382}, {"Z_qdot", a.z_qdot, 99.4382},
        {"M_wdot", a.m_wdot, 99.4382},
    };
    std::printf("added mass at rho = %g kg/m^3\n", rho);
    std::printf("%-8s %14s %14s %10s\n", "term", "derived", "reference", "rel.err");
    for (const Line& l : lines) {
        const double err = l.reference == 0.0 ? std::abs(l.value) : std::abs(l.value / l.reference - 1.0);
        std::printf("%-8s %14.4f %14.4f %9.2f%%\n", l.name, l.value, l.reference, 100.0 * err);
    }
    return kOk;
}

int cmd_verify() {
    bool ok = true;
    for (const OracleCheck& c : run_oracles()) {
        std::printf("%-4s %-24s value = %.6g  expected = %.6g  %s\n", c.passed ? "ok" : "FAIL", c.name.c_str(), c.value,
                    c.expected, c.detail.c_str());
        ok = ok && c.passed;
    }
    return ok ? kOk : kNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum-effort thrust programs for a submarine-launched vehicle"};
    app.require_subcommand(1);

    std::string scenario, out;
    bool six_dof = false;
    int jobs = 1;
    double rho = 1023.0;

    auto* simulate = app.add_subcommand("simulate", "Propagate a scenario under its open-loop program");
    simulate->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    simulate->add_option("--out", out, "Output directory");
    simulate->add_flag("--six-dof", six_dof, "Use the full six-degree-of-freedom model");

    auto* optimize = app.add_subcommand("optimize", "Solve the minimum-effort problem of a scenario");
    optimize->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    optimize->add_option("--out", out, "Output directory");
    optimize->add_option("--jobs", jobs, "Worker threads for combined scenarios")->check(CLI::Range(1, 1024));

    auto* sweep = app.add_subcommand("sweep", "Solve a scenario over a list of parameter values");
    sweep->add_option("sweepfile", scenario, "Sweep file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--jobs", jobs, "Worker threads (HYDROBOOST_JOBS overrides)")->check(CLI::Range(1, 1024));
    sweep->add_option("--out", out, "Output directory");

    auto* params = app.add_subcommand("params", "Print the derived added-mass set");
    params->add_option("--rho", rho, "Water density [kg/m^3]")->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "Run the analytic oracle checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        jobs = jobs_from_env(jobs);
        if (*simulate) return cmd_simulate(scenario, out, six_dof);
        if (*optimize) return cmd_optimize(scenario, out, jobs);
        if (*sweep) return cmd_sweep(scenario, out, jobs);
        if (*params) return cmd_params(rho);
        if (*verify) return cmd_verify();
    } catch (const Error& e) {
        std::cerr << "hydroboost: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "hydroboost: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
