#include "hydroboost/export.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "parsing.hpp"

namespace hydroboost {

namespace {

using nlohmann::json;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quoted(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells(1);
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cells.back() += '"';
                ++i;
            } else if (c == '"') {
                in_quotes = false;
            } else {
                cells.back() += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            cells.emplace_back();
        } else if (c != '\r') {
            cells.back() += c;
        }
    }
    return cells;
}

double parse_double(const std::string& cell, const std::string& source, int line) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size()) throw ParseError(source, line, "", "bad number '" + cell + "'");
    return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path, std::vector<std::string>& header) {
    std::istringstream in(detail::read_file(path));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path.string(), 1, "", "missing header");
    header = split_csv(line);
    int n = 1;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv(line);
        if (cells.size() != header.size())
            throw ParseError(path.string(), n, "", "expected " + std::to_string(header.size()) + " columns");
        rows.push_back(std::move(cells));
    }
    return rows;
}

const char* const kComponents[5] = {"u", "w", "q", "theta", "z"};

int component_index(const std::string& name) {
    for (int i = 0; i < 5; ++i)
        if (name == kComponents[i]) return i;
    throw ParameterError("unknown state component '" + name + "'");
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory<LongitudinalState>& traj) {
    out << kTrajectoryColumns << '\n';
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& x = traj.states[i];
        const ControlSample c = i < traj.controls.size() ? traj.controls[i] : ControlSample{};
        std::string event;
        for (const auto& e : traj.events)
            if (e.time == traj.times[i]) event = to_string(e.kind);
        out << num(traj.times[i]) << ',' << num(x.u) << ',' << num(x.w) << ',' << num(x.q) << ','
            << num(x.theta / detail::kDeg) << ',' << num(x.z) << ',' << num(-x.z) << ',' << num(c.thrust) << ','
            << num(c.deflection / detail::kDeg) << ',' << event << '\n';
    }
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory<LongitudinalState>& trajectory) {
    auto out = open_out(path);
    write_trajectory_csv(out, trajectory);
    finish(out, path);
}

Trajectory<LongitudinalState> read_trajectory_csv(const std::filesystem::path& path) {
    std::vector<std::string> header;
    const auto rows = read_csv(path, header);
    std::string joined;
    for (std::size_t i = 0; i < header.size(); ++i) joined += (i ? "," : "") + header[i];
    if (joined != kTrajectoryColumns) throw ParseError(path.string(), 1, "", "unexpected trajectory header");
    Trajectory<LongitudinalState> traj;
    int line = 1;
    for (const auto& r : rows) {
        ++line;
        double v[9];
        for (int k = 0; k < 9; ++k) v[k] = parse_double(r[static_cast<std::size_t>(k)], path.string(), line);
        traj.times.push_back(v[0]);
        traj.states.push_back({v[1], v[2], v[3], v[4] * detail::kDeg, v[5]});
        traj.controls.push_back({v[7], v[8] * detail::kDeg});
        if (r[9] == "surface_crossing") traj.events.push_back({v[0], EventKind::surface_crossing});
        else if (r[9] == "final_time") traj.events.push_back({v[0], EventKind::final_time});
        else if (!r[9].empty()) throw ParseError(path.string(), line, "event", "unknown event '" + r[9] + "'");
    }
    return traj;
}

json to_json(const OptimizationResult& r) {
    json doc;
    doc["status"] = to_string(r.status);
    doc["cost"] = r.cost;
    doc["max_residual"] = r.max_residual;
    doc["iterations"] = r.iterations;
    doc["inner_iterations"] = r.inner_iterations;
    doc["message"] = r.message;
    json residuals = json::array();
    for (const auto& res : r.residuals) residuals.push_back({{"component", kComponents[res.index]}, {"value", res.value}});
    doc["residuals"] = residuals;
    json free = json::object();
    for (const auto& [kind, value] : r.free_values) free[to_string(kind)] = value;
    doc["free_scalars"] = free;
    const auto& x0 = r.initial_state;
    doc["initial_state"] = {{"u", x0.u}, {"w", x0.w}, {"q", x0.q}, {"theta", x0.theta}, {"z", x0.z}};
    json thrust = json::array();
    json deflection = json::array();
    for (const auto& s : r.program.samples()) {
        thrust.push_back(s.thrust);
        deflection.push_back(s.deflection);
    }
    doc["controls"] = {{"dt", r.program.dt()}, {"thrust", thrust}, {"deflection", deflection}};
    return doc;
}

OptimizationResult result_from_json(const json& doc) {
    try {
        OptimizationResult r;
        const std::string status = doc.at("status").get<std::string>();
        if (status == "converged") r.status = SolverStatus::converged;
        else if (status == "infeasible") r.status = SolverStatus::infeasible;
        else if (status == "max_iterations") r.status = SolverStatus::max_iterations;
        else throw ParameterError("unknown status '" + status + "'");
        r.cost = doc.at("cost").get<double>();
        r.max_residual = doc.at("max_residual").get<double>();
        r.iterations = doc.at("iterations").get<int>();
        r.inner_iterations = doc.at("inner_iterations").get<int>();
        r.message = doc.at("message").get<std::string>();
        for (const auto& res : doc.at("residuals"))
            r.residuals.push_back({component_index(res.at("component").get<std::string>()), res.at("value").get<double>()});
        for (auto kind : {FreeKind::initial_depth, FreeKind::terminal_velocity, FreeKind::terminal_altitude})
            if (doc.at("free_scalars").contains(to_string(kind)))
                r.free_values.emplace_back(kind, doc.at("free_scalars").at(to_string(kind)).get<double>());
        const auto& x0 = doc.at("initial_state");
        r.initial_state = {x0.at("u").get<double>(), x0.at("w").get<double>(), x0.at("q").get<double>(),
                           x0.at("theta").get<double>(), x0.at("z").get<double>()};
        const auto& c = doc.at("controls");
        const auto thrust = c.at("thrust").get<std::vector<double>>();
        const auto deflection = c.at("deflection").get<std::vector<double>>();
        if (thrust.size() != deflection.size()) throw ParameterError("control arrays differ in length");
        std::vector<ControlSample> samples;
        for (std::size_t i = 0; i < thrust.size(); ++i) samples.push_back({thrust[i], deflection[i]});
        if (!samples.empty()) r.program = ControlProgram(c.at("dt").get<double>(), std::move(samples));
        return r;
    } catch (const json::exception& e) {
        throw ParseError("result", 0, "", e.what());
    }
}

void write_result_json(const std::filesystem::path& path, const OptimizationResult& result) {
    auto out = open_out(path);
    out << to_json(result).dump(2) << '\n';
    finish(out, path);
}

OptimizationResult read_result_json(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(detail::read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(path.string(), 0, "", e.what());
    }
    return result_from_json(doc);
}

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
    out << to_string(table.parameter)
        << ",status,cost,max_residual,iterations,inner_iterations,baseline_found,baseline_feasible,baseline_cost,"
           "dominates_baseline";
    for (auto kind : table.free) out << ',' << to_string(kind);
    out << ",message\n";
    for (const auto& r : table.rows) {
        out << num(r.value) << ',' << r.status << ',' << num(r.cost) << ',' << num(r.max_residual) << ','
            << r.iterations << ',' << r.inner_iterations << ',' << int(r.baseline_found) << ','
            << int(r.baseline_feasible) << ',' << num(r.baseline_cost) << ',' << int(r.dominates_baseline());
        for (std::size_t k = 0; k < table.free.size(); ++k)
            out << ',' << (k < r.free_values.size() ? num(r.free_values[k]) : "nan");
        out << ',' << quoted(r.message) << '\n';
    }
}

void write_sweep_csv(const std::filesystem::path& path, const SweepTable& table) {
    auto out = open_out(path);
    write_sweep_csv(out, table);
    finish(out, path);
}

SweepTable read_sweep_csv(const std::filesystem::path& path) {
    std::vector<std::string> header;
    const auto rows = read_csv(path, header);
    if (header.size() < 11) throw ParseError(path.string(), 1, "", "not a sweep table");
    SweepTable table;
    try {
        table.parameter = sweep_parameter_from_string(header[0]);
    } catch (const ParameterError& e) {
        throw ParseError(path.string(), 1, header[0], e.what());
    }
    const std::size_t nfree = header.size() - 11;
    for (std::size_t k = 0; k < nfree; ++k) {
        const std::string& h = header[10 + k];
        if (h == "initial_depth") table.free.push_back(FreeKind::initial_depth);
        else if (h == "terminal_velocity") table.free.push_back(FreeKind::terminal_velocity);
        else if (h == "terminal_altitude") table.free.push_back(FreeKind::terminal_altitude);
        else throw ParseError(path.string(), 1, h, "unknown column");
    }
    int line = 1;
    const std::string src = path.string();
    for (const auto& c : rows) {
        ++line;
        SweepRow r;
        r.value = parse_double(c[0], src, line);
        r.status = c[1];
        r.cost = parse_double(c[2], src, line);
        r.max_residual = parse_double(c[3], src, line);
        r.iterations = static_cast<int>(parse_double(c[4], src, line));
        r.inner_iterations = static_cast<int>(parse_double(c[5], src, line));
        r.baseline_found = c[6] == "1";
        r.baseline_feasible = c[7] == "1";
        r.baseline_cost = parse_double(c[8], src, line);
        for (std::size_t k = 0; k < nfree; ++k) r.free_values.push_back(parse_double(c[10 + k], src, line));
        r.message = c.back();
        table.rows.push_back(std::move(r));
    }
    return table;
}

void write_combined_csv(std::ostream& out, const CombinedCostReport& report) {
    out << "launch_mode,theta_exit_deg,launch_cost,boost_cost,total,converged,minimum\n";
    auto row = [&](const CombinedCostRow& r, bool minimum) {
        out << r.label << ',' << num(r.theta_exit) << ',' << num(r.launch_cost) << ',' << num(r.boost_cost) << ','
            << num(r.total) << ',' << int(r.converged) << ',' << int(minimum) << '\n';
    };
    for (std::size_t i = 0; i < report.rows.size(); ++i) row(report.rows[i], report.argmin && *report.argmin == i);
    if (report.vertical) row(*report.vertical, false);
}

void write_combined_csv(const std::filesystem::path& path, const CombinedCostReport& report) {
    auto out = open_out(path);
    write_combined_csv(out, report);
    finish(out, path);
}

}  // namespace hydroboost
