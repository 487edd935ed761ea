// Acceptance checks, one line per criterion. Exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hydroboost/export.hpp"
#include "hydroboost/scenario.hpp"
#include "hydroboost/sweep.hpp"
#include "hydroboost/verification.hpp"

using namespace hydroboost;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = HYDROBOOST_SCENARIO_DIR;
const fs::path kSweeps = HYDROBOOST_SWEEP_DIR;
constexpr double kDeg = std::numbers::pi / 180.0;

// Pinned tolerances.
constexpr double kAddedMassRelTol = 0.10;
constexpr double kParamsSeconds = 1.0;
constexpr double kIntegratorCostRelTol = 0.01;
constexpr double kIntegratorFitR2 = 0.999;
constexpr double kIntegratorSeconds = 10.0;
constexpr double kOrderLow = 3.8, kOrderHigh = 4.2;
constexpr double kRampFactor = 2.0;
constexpr double kDerivativeTol = 1e-9;
constexpr double kVelocityRelTol = 0.05;
constexpr double kPitchTolDeg = 2.0;
constexpr double kDepthRelTol = 0.05;
constexpr double kSweepSuiteSeconds = 600.0;
constexpr double kDominanceFactor = 1.01;
constexpr double kEdgeFraction = 0.01;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct Outcome {
    bool pass = true;
    std::string summary;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& why) {
        if (!ok) {
            pass = false;
            notes.push_back(why);
        }
    }
};

int failures = 0;

void report(int id, const Outcome& o, double seconds) {
    std::printf("criterion %d: %s  %s  [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", o.summary.c_str(), seconds);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

void run(int id, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.summary = std::string("threw: ") + e.what();
    }
    report(id, o, seconds_since(t0));
}

// ---------------------------------------------------------------------------

Outcome added_mass() {
    Outcome o;
    const auto t0 = Clock::now();
    const AddedMassSet a = derive_added_mass(VehicleParams{}, 1023.0);
    const double elapsed = seconds_since(t0);
    struct Ref {
        const char* name;
        double value;
        double reference;
    };
    const Ref refs[] = {{"X_udot", a.x_udot, -10.5294}, {"Y_vdot", a.y_vdot, -1296.5}, {"Z_wdot", a.z_wdot, -1296.5},
                        {"M_qdot", a.m_qdot, -3936.7},  {"N_rdot", a.n_rdot, -3936.7}, {"Y_rdot", a.y_rdot, -99.4382},
                        {"Z_qdot", a.z_qdot, 99.4382},  {"M_wdot", a.m_wdot, 99.4382}, {"N_vdot", a.n_vdot, -99.4382}};
    double worst = 0.0;
    std::string worst_name;
    for (const Ref& r : refs) {
        const double err = std::abs(r.value / r.reference - 1.0);
        if (err > worst) {
            worst = err;
            worst_name = r.name;
        }
        o.require(err <= kAddedMassRelTol, fmt("%s = %.4f vs %.4f", r.name, r.value, r.reference));
    }
    o.require(a.k_pdot == 0.0, "K_pdot is not exactly zero");
    o.require(a.y_vdot == a.z_wdot && a.m_qdot == a.n_rdot && a.z_qdot == a.m_wdot && a.y_rdot == a.n_vdot &&
                  a.y_rdot == -a.z_qdot,
              "symmetry pairs differ");
    o.require(elapsed < kParamsSeconds, fmt("derivation took %.3f s", elapsed));
    o.summary = fmt("added mass: worst relative error %.2f%% (%s), K_pdot = 0, symmetry pairs exact, %.4f s",
                    100.0 * worst, worst_name.c_str(), elapsed);
    return o;
}

Outcome double_integrator() {
    Outcome o;
    const auto t0 = Clock::now();
    const OracleCheck c = double_integrator_oracle();
    const double elapsed = seconds_since(t0);
    o.require(std::abs(c.value - 12.0) <= kIntegratorCostRelTol * 12.0, fmt("J = %.6f", c.value));
    o.require(c.fit > kIntegratorFitR2, fmt("R^2 = %.6f", c.fit));
    o.require(elapsed < kIntegratorSeconds, fmt("took %.2f s", elapsed));
    o.summary = fmt("double integrator: J = %.5f (target 12), R^2 = %.6f, %.2f s", c.value, c.fit, elapsed);
    return o;
}

Outcome quadrature() {
    Outcome o;
    const double j = effort_cost(ControlProgram::constant(0.2, 0.4, {1000.0, 0.0}));
    o.require(std::abs(j - 4.0e5) <= 1e-9 * 4.0e5, fmt("constant case J = %.10g", j));

    const OracleCheck order = rk4_order_oracle();
    o.require(order.value >= kOrderLow && order.value <= kOrderHigh, fmt("RK4 order %.3f", order.value));

    // T = 1000 t on [0, 1], h = 0.2: error of the trapezoid sum against (b - a) h^2 max|f''| / 12.
    std::vector<ControlSample> ramp;
    for (int k = 0; k <= 5; ++k) ramp.push_back({200.0 * k, 0.0});
    const double err = std::abs(effort_cost(ControlProgram(0.2, ramp)) - 1.0e6 / 3.0);
    const double bound = 1.0 * 0.04 * 2.0e6 / 12.0;
    const double ratio = err / bound;
    o.require(ratio >= 1.0 / kRampFactor && ratio <= kRampFactor, fmt("ramp error / bound = %.4f", ratio));
    o.summary = fmt("constant J = %.1f, RK4 order %.3f, ramp error / bound = %.4f", j, order.value, ratio);
    return o;
}

double gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); }

Outcome model_consistency() {
    Outcome o;
    const VehicleModel model = VehicleModel::standard();
    std::mt19937_64 rng(20240601);
    auto uni = [&rng](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const LongitudinalState xl{uni(5, 60), uni(-3, 3), uni(-0.5, 0.5), uni(-80, 80) * kDeg, uni(1, 300)};
        const double thrust = uni(0, 30000);
        const auto dl = launch_derivative(xl, thrust, model);
        const auto fl = project(six_dof_derivative(embed(xl), {thrust, 0.0, 0.0}, model, matched_options()));
        const LongitudinalState xb{uni(30, 250), uni(-5, 5), uni(-0.5, 0.5), uni(-80, 80) * kDeg, -uni(1, 10000)};
        const BoostControl c{uni(0, 30000), uni(-12, 12) * kDeg};
        const auto db = boost_derivative(xb, c, model);
        const auto fb = project(six_dof_derivative(embed(xb), {c.thrust, c.deflection, 0.0}, model, matched_options()));
        for (int k = 0; k < 5; ++k) worst = std::max({worst, gap(dl[k], fl[k]), gap(db[k], fb[k])});
    }
    o.require(worst <= kDerivativeTol, fmt("largest derivative gap %.3e", worst));

    // 15 s open-loop runs, simplified model against the full model with its default options.
    auto compare = [&](const char* label, const Trajectory<LongitudinalState>& s,
                       const Trajectory<LongitudinalState>& f, double z0) {
        const auto& a = s.final_state();
        const auto& b = f.final_state();
        const double du = std::abs(a.u - b.u) / std::abs(a.u);
        const double dth = std::abs(a.theta - b.theta) / kDeg;
        const double dz = std::abs(a.z - b.z) / std::abs(a.z - z0);
        o.require(std::abs(s.final_time() - 15.0) < 1e-9 && std::abs(f.final_time() - 15.0) < 1e-9,
                  std::string(label) + " run stopped early");
        o.require(du <= kVelocityRelTol, fmt("%s: u differs by %.2f%%", label, 100.0 * du));
        o.require(dth <= kPitchTolDeg, fmt("%s: theta differs by %.3f deg", label, dth));
        o.require(dz <= kDepthRelTol, fmt("%s: z differs by %.2f%% of the climb", label, 100.0 * dz));
        return fmt("%s du %.3f%% dtheta %.4f deg dz %.3f%%", label, 100.0 * du, dth, 100.0 * dz);
    };
    const LongitudinalState launch0{10.0, 0.0, 0.0, 0.0, 200.0};
    const auto lp = ControlProgram::constant(0.2, 15.0, {10000.0, 0.0});
    const auto ls = simulate_launch(model, launch0, lp, 15.0);
    const auto lf = project(simulate_six_dof(model, embed(launch0), lp, 15.0));
    bool submerged = true;
    for (const auto& x : ls.states) submerged = submerged && x.z > 0.0;
    for (const auto& x : lf.states) submerged = submerged && x.z > 0.0;
    o.require(submerged, "launch comparison left the water");
    const std::string lt = compare("launch", ls, lf, launch0.z);

    const LongitudinalState boost0{35.0, 0.0, 0.0, 55.0 * kDeg, 0.0};
    const auto bp = ControlProgram::constant(0.2, 15.0, {25000.0, 0.0});
    const auto bs = simulate_boost(model, boost0, bp, 15.0);
    const auto bf = project(simulate_six_dof(model, embed(boost0), bp, 15.0));
    bool airborne = true;
    for (std::size_t k = 1; k < bf.states.size(); ++k) airborne = airborne && bf.states[k].z < 0.0;
    o.require(airborne, "boost comparison re-entered the water");
    const std::string bt = compare("boost", bs, bf, boost0.z);
    o.summary = fmt("derivatives: worst gap %.2e over 100+100 states; ", worst) + lt + "; " + bt;
    return o;
}

// ---------------------------------------------------------------------------

struct Solved {
    ScenarioSpec spec;
    OptimizationResult result;
    BaselineResult baseline;
};

std::map<std::string, Solved> solved;

const Solved& solve_scenario(const std::string& name) {
    auto it = solved.find(name);
    if (it != solved.end()) return it->second;
    Solved s;
    s.spec = parse_scenario(kScenarios / (name + ".scn"));
    const TranscribedProblem pb = s.spec.problem();
    s.result = pb.free.empty() ? solve(pb, s.spec.solver) : solve_with_free_parameters(pb, s.spec.solver);
    s.baseline = constant_thrust_baseline(pb, kU, s.spec.solver.constraint_tolerance);
    std::printf("    %-26s %-15s J = %.5e  max residual %.2e\n", name.c_str(), to_string(s.result.status),
                s.result.cost, s.result.max_residual);
    std::fflush(stdout);
    return solved.emplace(name, std::move(s)).first->second;
}

const std::vector<int> kAngles{20, 35, 45, 55, 65, 75, 90};
const std::vector<int> kDepths{100, 200, 300, 400, 500};

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (int a : kAngles) names.push_back("launch_" + std::to_string(a) + "deg");
    for (int d : kDepths) names.push_back("vertical_" + std::to_string(d) + "m");
    for (int a : kAngles) names.push_back("boost_" + std::to_string(a) + "deg");
    return names;
}

Outcome feasibility_contract() {
    Outcome o;
    int converged = 0, total = 0;
    for (const auto& name : suite_names()) {
        const Solved& s = solve_scenario(name);
        ++total;
        if (!s.result.converged()) continue;
        ++converged;
        const auto& b = s.spec.bounds;
        for (const auto& c : s.result.program.samples()) {
            o.require(c.thrust >= 0.0 && c.thrust <= 30000.0 && c.thrust >= b.thrust_min && c.thrust <= b.thrust_max,
                      fmt("%s: thrust sample %.3f N outside bounds", name.c_str(), c.thrust));
            o.require(std::abs(c.deflection) <= 12.0 * kDeg + 1e-12,
                      fmt("%s: deflection %.4f deg outside limits", name.c_str(), c.deflection / kDeg));
        }
        o.require(s.result.max_residual < s.spec.solver.constraint_tolerance,
                  fmt("%s: residual %.3e", name.c_str(), s.result.max_residual));
    }
    o.require(converged > 0, "no scenario converged");
    o.summary = fmt("%d of %d bundled scenarios converged; every converged result within bounds and residual "
                    "tolerance",
                    converged, total);
    if (converged < total) {
        std::string list;
        for (const auto& name : suite_names())
            if (!solved.at(name).result.converged()) list += (list.empty() ? "" : ", ") + name;
        o.summary += " (not converged: " + list + ")";
    }
    return o;
}

std::map<std::string, SweepTable> sweeps;

const std::vector<std::string> kSweepFiles{"launch_theta_exit", "launch_uf", "boost_theta_exit",
                                           "boost_uf",          "boost_altitude", "boost_tf"};

std::string describe(const SweepTable& t) {
    std::string s;
    for (const auto& r : t.rows)
        s += fmt("%s%g:%s", s.empty() ? "" : " ", r.value, r.converged() ? fmt("%.4e", r.cost).c_str() : r.status.c_str());
    return s;
}

// Costs of converged rows must move monotonically with the swept value.
void check_monotone(Outcome& o, const std::string& name, bool increasing, std::size_t min_rows) {
    const SweepTable& t = sweeps.at(name);
    std::vector<const SweepRow*> ok;
    for (const auto& r : t.rows)
        if (r.converged()) ok.push_back(&r);
    o.require(ok.size() >= min_rows, fmt("%s: only %zu converged rows", name.c_str(), ok.size()));
    for (std::size_t i = 1; i < ok.size(); ++i) {
        const bool good = increasing ? ok[i]->cost > ok[i - 1]->cost : ok[i]->cost < ok[i - 1]->cost;
        o.require(good, fmt("%s: cost at %g vs %g breaks the %s order", name.c_str(), ok[i]->value,
                            ok[i - 1]->value, increasing ? "increasing" : "decreasing"));
    }
    o.notes.push_back(name + ": " + describe(t));
}

Outcome trends() {
    Outcome o;
    const auto t0 = Clock::now();
    for (const auto& name : kSweepFiles) {
        const SweepSpec spec = parse_sweep(kSweeps / (name + ".sweep"));
        sweeps[name] = run_sweep(spec, 1);
    }
    const double sweep_seconds = seconds_since(t0);

    // Vertical launch: one scenario per depth, each with its own final time.
    std::vector<double> vertical;
    bool vertical_ok = true;
    for (int d : kDepths) {
        const Solved& s = solve_scenario("vertical_" + std::to_string(d) + "m");
        vertical_ok = vertical_ok && s.result.converged();
        vertical.push_back(s.result.cost);
    }
    o.require(vertical_ok, "a vertical-launch scenario did not converge");
    for (std::size_t i = 1; i < vertical.size(); ++i)
        o.require(vertical[i] > vertical[i - 1], fmt("vertical cost not increasing at %d m", kDepths[i]));

    check_monotone(o, "launch_uf", true, sweeps.at("launch_uf").rows.size());
    check_monotone(o, "boost_uf", true, 3);
    check_monotone(o, "boost_altitude", true, 3);
    check_monotone(o, "boost_tf", false, 3);

    const SweepTable& angles = sweeps.at("launch_theta_exit");
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < angles.rows.size(); ++i)
        if (angles.rows[i].converged() && (!best || angles.rows[i].cost < angles.rows[*best].cost)) best = i;
    o.require(best.has_value(), "no launch angle converged");
    const bool interior = best && *best > 0 && *best + 1 < angles.rows.size();
    o.require(interior, "launch theta_exit argmin sits on the edge of the sweep");
    o.notes.push_back("launch_theta_exit: " + describe(angles));
    o.require(sweep_seconds < kSweepSuiteSeconds, fmt("sweep suite took %.0f s", sweep_seconds));
    o.summary = fmt("vertical cost increasing over 100..500 m; launch u_f, boost u_f and altitude increasing; boost "
                    "t_f decreasing; launch argmin at %g deg; sweep suite %.0f s",
                    best ? angles.rows[*best].value : NAN, sweep_seconds);
    if (!o.pass) o.summary = "trend or timing check failed";
    return o;
}

Outcome dominance() {
    Outcome o;
    int applicable = 0;
    auto check = [&](const std::string& label, bool feasible, bool converged, double cost, double base) {
        if (!feasible) return;
        ++applicable;
        o.require(converged && cost <= base * kDominanceFactor,
                  fmt("%s: J = %.5e vs baseline %.5e (%s)", label.c_str(), cost, base,
                      converged ? "converged" : "not converged"));
    };
    std::vector<std::string> names = suite_names();
    names.insert(names.end(), {"launch_velocity_target", "boost_velocity_target", "launch_45deg_free_uf",
                               "vertical_free_depth"});
    for (const auto& name : names) {
        const Solved& s = solve_scenario(name);
        check(name, s.baseline.found && s.baseline.feasible, s.result.converged(), s.result.cost, s.baseline.cost);
    }
    for (const auto& [name, table] : sweeps)
        for (const auto& r : table.rows)
            check(fmt("%s@%g", name.c_str(), r.value), r.baseline_found && r.baseline_feasible, r.converged(), r.cost,
                  r.baseline_cost);
    o.require(applicable > 0, "no scenario has a feasible constant-thrust baseline");
    std::string detail;
    for (const char* n : {"launch_velocity_target", "boost_velocity_target"}) {
        const Solved& s = solved.at(n);
        detail += fmt("; %s %.4e vs %.4e", n, s.result.cost, s.baseline.cost);
    }
    o.summary = fmt("%d scenarios or sweep rows with a feasible baseline, all dominated", applicable) + detail;
    return o;
}

Outcome free_parameters() {
    Outcome o;
    auto edge = [&](const std::string& name) {
        const Solved& s = solve_scenario(name);
        o.require(s.result.converged(), name + " did not converge");
        o.require(s.result.free_values.size() == 1 && s.spec.free.size() == 1, name + ": expected one free scalar");
        if (!o.pass) return std::string();
        const FreeScalar& f = s.spec.free[0];
        const double v = s.result.free_values[0].second;
        const double off = (v - f.lower) / (f.upper - f.lower);
        o.require(off <= kEdgeFraction, fmt("%s: %.4f is %.2f%% of the box above the lower edge", name.c_str(), v,
                                            100.0 * off));
        return fmt("%s = %.4f on [%g, %g]", to_string(f.kind), v, f.lower, f.upper);
    };
    const std::string a = edge("launch_45deg_free_uf");
    const std::string b = edge("vertical_free_depth");
    o.summary = a + "; " + b;
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    Outcome o;
    const SweepSpec spec = parse_sweep(kSweeps / "launch_theta_exit.sweep");
    auto text = [](const SweepTable& t) {
        std::ostringstream s;
        write_sweep_csv(s, t);
        return s.str();
    };
    const std::string serial = text(run_sweep(spec, 1));
    const std::string again = text(run_sweep(spec, 1));
    const std::string parallel = text(run_sweep(spec, 4));
    o.require(serial == again, "serial reruns differ");
    o.require(serial == parallel, "serial and 4-thread tables differ");
    std::string how = "library: serial, serial rerun and 4 threads identical";
#ifdef HYDROBOOST_CLI
    const fs::path dir = fs::temp_directory_path() / "hydroboost_acceptance_determinism";
    fs::remove_all(dir);
    const std::string cli = HYDROBOOST_CLI;
    const std::string file = (kSweeps / "launch_theta_exit.sweep").string();
    const int rc1 = std::system(("\"" + cli + "\" sweep \"" + file + "\" --out \"" + (dir / "serial").string() +
                                 "\" > /dev/null").c_str());
    const int rc2 = std::system(("\"" + cli + "\" sweep \"" + file + "\" --jobs 4 --out \"" +
                                 (dir / "jobs4").string() + "\" > /dev/null").c_str());
    const std::string a = slurp(dir / "serial" / "launch_theta_exit.csv");
    const std::string b = slurp(dir / "jobs4" / "launch_theta_exit.csv");
    o.require(rc1 != -1 && rc2 != -1 && !a.empty(), "CLI sweep produced no table");
    o.require(a == b, "CLI tables differ between serial and --jobs 4");
    o.require(a == serial, "CLI table differs from the library table");
    how += fmt("; CLI sweep serial vs --jobs 4 identical (%zu bytes)", a.size());
    fs::remove_all(dir);
#endif
    o.summary = how;
    return o;
}

}  // namespace

int main() {
    std::printf("hydroboost acceptance\n");
    run(1, added_mass);
    run(2, double_integrator);
    run(3, quadrature);
    run(4, model_consistency);
    run(5, feasibility_contract);
    run(6, trends);
    run(7, dominance);
    run(8, free_parameters);
    run(9, determinism);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
