#include "hydroboost/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "hydroboost/error.hpp"
#include "parsing.hpp"

namespace hydroboost {

namespace {

using detail::Parser;
using detail::kDeg;
using detail::lower;
using detail::read_file;
using detail::trim;

// Maps a state key (with unit variant) to its component index and scale.
// Altitude is stored as depth with the opposite sign.
bool state_key(const std::string& key, int& index, double& scale) {
    static const std::map<std::string, std::pair<int, double>> keys = {
        {"u", {kU, 1.0}},          {"w", {kW, 1.0}},
        {"q", {kQ, 1.0}},          {"q_deg", {kQ, kDeg}},
        {"theta", {kTheta, 1.0}},  {"theta_deg", {kTheta, kDeg}},
        {"z", {kDepth, 1.0}},      {"depth", {kDepth, 1.0}},
        {"altitude", {kDepth, -1.0}},
    };
    const auto it = keys.find(key);
    if (it == keys.end()) return false;
    index = it->second.first;
    scale = it->second.second;
    return true;
}

const char* const kComponentNames[5] = {"u", "w", "q", "theta", "z"};

}  // namespace

const char* to_string(ScenarioPhase phase) {
    switch (phase) {
        case ScenarioPhase::launch: return "launch";
        case ScenarioPhase::boost: return "boost";
        case ScenarioPhase::combined: return "combined";
    }
    return "unknown";
}

const char* to_string(LaunchMode mode) {
    switch (mode) {
        case LaunchMode::horizontal: return "horizontal";
        case LaunchMode::vertical: return "vertical";
    }
    return "unknown";
}

std::vector<KeyValueEntry> read_key_values(const std::string& text, const std::string& source_name) {
    std::vector<KeyValueEntry> out;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view view(raw);
        const auto hash = view.find_first_of("#;");
        if (hash != std::string_view::npos) view = view.substr(0, hash);
        const std::string s = trim(view);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']' || s.size() < 3) throw ParseError(source_name, line, "", "malformed section header");
            section = lower(trim(std::string_view(s).substr(1, s.size() - 2)));
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError(source_name, line, "", "expected 'key = value'");
        KeyValueEntry e{section, lower(trim(std::string_view(s).substr(0, eq))), trim(std::string_view(s).substr(eq + 1)),
                        line};
        if (e.key.empty()) throw ParseError(source_name, line, "", "missing key");
        out.push_back(std::move(e));
    }
    return out;
}

int ScenarioSpec::intervals() const { return static_cast<int>(std::lround(final_time / dt)); }

Phase ScenarioSpec::optimal_control_phase() const {
    if (phase == ScenarioPhase::combined) throw ParameterError("combined scenarios have no single phase");
    return phase == ScenarioPhase::boost ? Phase::boost : Phase::launch;
}

VehicleModel ScenarioSpec::model() const {
    CoefficientProvider provider = table ? CoefficientProvider(table) : CoefficientProvider(analytic);
    return VehicleModel::make(vehicle, environment, std::move(provider));
}

TranscribedProblem ScenarioSpec::problem() const { return problem(model()); }

TranscribedProblem ScenarioSpec::problem(const VehicleModel& vehicle_model) const {
    TranscribedProblem pb;
    pb.phase = optimal_control_phase();
    pb.dt = dt;
    pb.intervals = intervals();
    pb.boundary.initial = initial;
    pb.boundary.terminal = terminal;
    pb.bounds = bounds;
    pb.weights = weights;
    pb.free = free;
    pb.model = vehicle_model;
    pb.integrator = integrator;
    pb.validate();
    return pb;
}

ScenarioSpec parse_scenario(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    auto spec = parse_scenario_text(text, path.string(), path.parent_path());
    spec.source = path;
    return spec;
}

ScenarioSpec parse_scenario_text(const std::string& text, const std::string& source_name,
                                 const std::filesystem::path& base_dir) {
    const Parser p(source_name, base_dir);
    const auto entries = read_key_values(text, source_name);

    ScenarioSpec spec;
    spec.name = std::filesystem::path(source_name).stem().string();
    spec.source = source_name;

    // Phase and mode first: they select the defaults everything else overrides.
    std::set<std::string> seen;
    for (const auto& e : entries) {
        const std::string q = Parser::qualified(e);
        if (!seen.insert(q).second) p.fail(e, "duplicate key");
        if (!e.section.empty()) continue;
        if (e.key == "phase") {
            const std::string v = lower(e.value);
            if (v == "launch") spec.phase = ScenarioPhase::launch;
            else if (v == "boost") spec.phase = ScenarioPhase::boost;
            else if (v == "combined") spec.phase = ScenarioPhase::combined;
            else p.fail(e, "expected launch, boost or combined");
        } else if (e.key == "launch_mode") {
            const std::string v = lower(e.value);
            if (v == "horizontal") spec.launch_mode = LaunchMode::horizontal;
            else if (v == "vertical") spec.launch_mode = LaunchMode::vertical;
            else p.fail(e, "expected horizontal or vertical");
        }
    }

    const bool vertical = spec.launch_mode == LaunchMode::vertical;
    if (spec.phase == ScenarioPhase::boost) {
        spec.initial = {35.0, 0.0, 0.0, 0.0, 0.0};
        spec.terminal = {135.0, std::nullopt, std::nullopt, 0.0, -600.0};
    } else {
        spec.initial = {10.0, 0.0, 0.0, vertical ? 90.0 * kDeg : 0.0, 100.0};
        spec.terminal = {35.0, std::nullopt, std::nullopt, vertical ? std::optional(90.0 * kDeg) : std::nullopt, 0.0};
    }

    std::array<int, 5> initial_line{};
    std::array<int, 5> terminal_line{};
    const KeyValueEntry* tf_entry = nullptr;
    const KeyValueEntry* dt_entry = nullptr;
    bool have_table = false;
    bool analytic_given = false;

    for (const auto& e : entries) {
        const std::string& s = e.section;
        const std::string& k = e.key;
        if (s.empty()) {
            if (k == "name") spec.name = e.value;
            else if (k != "phase" && k != "launch_mode") p.fail(e, "unknown key");
        } else if (s == "initial" || s == "terminal") {
            int index = 0;
            double scale = 1.0;
            if (!state_key(k, index, scale)) p.fail(e, "unknown state component");
            auto& lines = s == "initial" ? initial_line : terminal_line;
            const auto slot = static_cast<std::size_t>(index);
            if (lines[slot] != 0)
                p.fail(e, std::string("component ") + kComponentNames[index] + " already set on line " +
                              std::to_string(lines[slot]));
            lines[slot] = e.line;
            if (s == "initial") {
                spec.initial[index] = scale * p.number(e);
            } else if (lower(e.value) == "free") {
                spec.terminal[slot] = std::nullopt;
            } else {
                spec.terminal[slot] = scale * p.number(e);
            }
        } else if (s == "timing") {
            if (k == "tf" || k == "final_time") {
                spec.final_time = p.positive(e);
                tf_entry = &e;
            } else if (k == "dt") {
                spec.dt = p.positive(e);
                dt_entry = &e;
            } else if (k == "step") {
                spec.integrator.step = p.positive(e);
            } else if (k == "interpolation") {
                const std::string v = lower(e.value);
                if (v == "linear") spec.integrator.interpolation = Interpolation::linear;
                else if (v == "zoh" || v == "zero_order_hold") spec.integrator.interpolation = Interpolation::zero_order_hold;
                else p.fail(e, "expected linear or zoh");
            } else {
                p.fail(e, "unknown key");
            }
        } else if (s == "bounds") {
            if (k == "thrust_min") spec.bounds.thrust_min = p.number(e);
            else if (k == "thrust_max") spec.bounds.thrust_max = p.number(e);
            else if (k == "deflection_max") spec.bounds.deflection_max = p.number(e);
            else if (k == "deflection_max_deg") spec.bounds.deflection_max = p.number(e) * kDeg;
            else p.fail(e, "unknown key");
        } else if (s == "weights") {
            if (k == "thrust") spec.weights.thrust = p.number(e);
            else if (k == "deflection") spec.weights.deflection = p.number(e);
            else p.fail(e, "unknown key");
        } else if (s == "free") {
            FreeScalar f;
            if (k == "initial_depth") f.kind = FreeKind::initial_depth;
            else if (k == "terminal_velocity") f.kind = FreeKind::terminal_velocity;
            else if (k == "terminal_altitude") f.kind = FreeKind::terminal_altitude;
            else p.fail(e, "unknown free parameter");
            std::tie(f.lower, f.upper) = p.range(e);
            spec.free.push_back(f);
        } else if (s == "vehicle") {
            static const std::map<std::string, double VehicleParams::*> fields = {
                {"mass", &VehicleParams::mass},
                {"inertia_x", &VehicleParams::inertia_x},
                {"inertia_y", &VehicleParams::inertia_y},
                {"inertia_z", &VehicleParams::inertia_z},
                {"length", &VehicleParams::length},
                {"diameter", &VehicleParams::diameter},
                {"reference_area", &VehicleParams::reference_area},
                {"volume", &VehicleParams::volume},
                {"nose_length", &VehicleParams::nose_length},
                {"thrust_arm", &VehicleParams::thrust_arm},
            };
            if (k == "x_cg") spec.vehicle.cg_position.x = p.number(e);
            else if (k == "x_cb") spec.vehicle.cb_position.x = p.number(e);
            else if (const auto it = fields.find(k); it != fields.end()) spec.vehicle.*(it->second) = p.number(e);
            else p.fail(e, "unknown key");
        } else if (s == "environment") {
            static const std::map<std::string, double EnvironmentModel::*> fields = {
                {"water_density", &EnvironmentModel::water_density},
                {"gravity", &EnvironmentModel::gravity},
                {"isa_sea_level_density", &EnvironmentModel::isa_sea_level_density},
                {"isa_sea_level_temperature", &EnvironmentModel::isa_sea_level_temperature},
                {"isa_lapse_rate", &EnvironmentModel::isa_lapse_rate},
                {"gas_constant_air", &EnvironmentModel::gas_constant_air},
                {"isa_reference_gravity", &EnvironmentModel::isa_reference_gravity},
                {"speed_of_sound", &EnvironmentModel::speed_of_sound},
            };
            const auto it = fields.find(k);
            if (it == fields.end()) p.fail(e, "unknown key");
            spec.environment.*(it->second) = p.positive(e);
        } else if (s == "coefficients") {
            static const std::map<std::string, double AnalyticCoefficients::*> fields = {
                {"axial", &AnalyticCoefficients::axial},
                {"normal_slope", &AnalyticCoefficients::normal_slope},
                {"pitch_slope", &AnalyticCoefficients::pitch_slope},
                {"pitch_damping", &AnalyticCoefficients::pitch_damping},
            };
            if (k == "table") {
                spec.coefficient_table = p.file(e);
                try {
                    spec.table = std::make_shared<const CoefficientTable>(CoefficientTable::from_file(*spec.coefficient_table));
                } catch (const ParseError&) {
                    throw;
                } catch (const Error& err) {
                    p.fail(e, err.what());
                }
                have_table = true;
            } else if (const auto it = fields.find(k); it != fields.end()) {
                spec.analytic.*(it->second) = p.number(e);
                analytic_given = true;
            } else {
                p.fail(e, "unknown key");
            }
        } else if (s == "solver") {
            auto& c = spec.solver;
            if (k == "constraint_tolerance") c.constraint_tolerance = p.positive(e);
            else if (k == "gradient_tolerance") c.gradient_tolerance = p.positive(e);
            else if (k == "penalty_growth") c.penalty_growth = p.positive(e);
            else if (k == "penalty_cap") c.penalty_cap = p.positive(e);
            else if (k == "max_outer") c.max_outer = p.count(e);
            else if (k == "max_inner") c.max_inner = p.count(e);
            else if (k == "fd_relative_step") c.fd_relative_step = p.positive(e);
            else if (k == "thrust_fd_floor") c.thrust_fd_floor = p.positive(e);
            else p.fail(e, "unknown key");
        } else if (s == "program") {
            if (k == "thrust") spec.program.thrust = p.number(e);
            else if (k == "deflection") spec.program.deflection = p.number(e);
            else if (k == "deflection_deg") spec.program.deflection = p.number(e) * kDeg;
            else if (k == "file") spec.program.file = p.file(e);
            else p.fail(e, "unknown key");
        } else if (s == "combined") {
            if (k == "launch") spec.launch_file = p.file(e);
            else if (k == "boost") spec.boost_file = p.file(e);
            else if (k == "vertical") spec.vertical_file = p.file(e);
            else if (k == "angles" || k == "angles_deg") spec.angles = p.list(e);
            else p.fail(e, "unknown key");
        } else {
            p.fail(e, "unknown section");
        }
    }
    if (have_table && analytic_given)
        throw ParseError(source_name, 0, "coefficients", "give either a table or analytic constants, not both");

    if (spec.phase == ScenarioPhase::combined) {
        if (spec.launch_file.empty() || spec.boost_file.empty())
            throw ParseError(source_name, 0, "combined", "combined scenarios need both launch and boost files");
        if (spec.angles.empty()) throw ParseError(source_name, 0, "combined.angles", "at least one angle is required");
        return spec;
    }

    if (!tf_entry) throw ParseError(source_name, 0, "timing.tf", "final time is required");
    const double ratio = spec.final_time / spec.dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
        const KeyValueEntry& at = dt_entry && dt_entry->line > tf_entry->line ? *dt_entry : *tf_entry;
        p.fail(at, "t_f must be a multiple of dt");
    }
    if (spec.intervals() < 2) p.fail(*tf_entry, "at least two control intervals are required");

    try {
        spec.integrator.validate(spec.dt);
        spec.bounds.validate();
        spec.problem(VehicleModel::make(spec.vehicle, spec.environment, CoefficientProvider(spec.analytic)));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& err) {
        throw ParseError(source_name, 0, "", err.what());
    }
    return spec;
}

ControlProgram build_program(const ScenarioSpec& spec) {
    const auto n = static_cast<std::size_t>(spec.intervals()) + 1;
    if (!spec.program.file) {
        return ControlProgram(spec.dt, std::vector<ControlSample>(n, {spec.program.thrust, spec.program.deflection}));
    }
    // CSV rows: t, T, theta_T_deg. Header lines are skipped; times must sit on the dt grid.
    const std::string src = spec.program.file->string();
    std::istringstream in(read_file(*spec.program.file));
    std::vector<ControlSample> samples;
    std::string raw;
    int line = 0;
    const Parser p(src, {});
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(raw);
        if (s.empty() || s.front() == '#') continue;
        std::vector<std::string> cells;
        std::stringstream row(s);
        for (std::string cell; std::getline(row, cell, ',');) cells.push_back(trim(cell));
        if (cells.empty() || !(std::isdigit(static_cast<unsigned char>(cells[0].front())) || cells[0].front() == '-' ||
                               cells[0].front() == '.')) {
            if (samples.empty()) continue;
        }
        const KeyValueEntry e{"program", "file", s, line};
        if (cells.size() < 2 || cells.size() > 3) p.fail(e, "expected t, T[, theta_T_deg]");
        const double t = p.number(e, cells[0]);
        const double expected = spec.dt * static_cast<double>(samples.size());
        if (std::abs(t - expected) > 1e-6 * std::max(1.0, expected))
            p.fail(e, "sample times must be 0, dt, 2 dt, ...");
        ControlSample c;
        c.thrust = p.number(e, cells[1]);
        c.deflection = cells.size() == 3 ? p.number(e, cells[2]) * kDeg : 0.0;
        samples.push_back(c);
    }
    if (samples.size() < 2) throw ParseError(src, 0, "program.file", "at least two samples are required");
    return ControlProgram(spec.dt, std::move(samples));
}

}  // namespace hydroboost
