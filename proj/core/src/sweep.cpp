#include "hydroboost/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "parsing.hpp"

namespace hydroboost {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

const char* to_string(SweepParameter parameter) {
    switch (parameter) {
        case SweepParameter::theta_exit: return "theta_exit";
        case SweepParameter::z0: return "z0";
        case SweepParameter::tf: return "tf";
        case SweepParameter::uf: return "uf";
        case SweepParameter::altitude_f: return "altitude_f";
    }
    return "unknown";
}

SweepParameter sweep_parameter_from_string(const std::string& name) {
    for (auto p : {SweepParameter::theta_exit, SweepParameter::z0, SweepParameter::tf, SweepParameter::uf,
                   SweepParameter::altitude_f})
        if (name == to_string(p)) return p;
    throw ParameterError("unknown sweep parameter '" + name + "'");
}

SweepSpec parse_sweep(const std::filesystem::path& path) {
    auto spec = parse_sweep_text(detail::read_file(path), path.string(), path.parent_path());
    spec.source = path;
    return spec;
}

SweepSpec parse_sweep_text(const std::string& text, const std::string& source_name,
                           const std::filesystem::path& base_dir) {
    const detail::Parser p(source_name, base_dir);
    SweepSpec spec;
    spec.name = std::filesystem::path(source_name).stem().string();
    spec.source = source_name;
    const KeyValueEntry* base = nullptr;
    const KeyValueEntry* parameter = nullptr;
    const KeyValueEntry* values = nullptr;
    const auto entries = read_key_values(text, source_name);
    for (const auto& e : entries) {
        if (!e.section.empty()) p.fail(e, "sweep files have no sections");
        if (e.key == "name") {
            spec.name = e.value;
        } else if (e.key == "base") {
            if (base) p.fail(e, "duplicate key");
            base = &e;
        } else if (e.key == "parameter") {
            if (parameter) p.fail(e, "duplicate key");
            parameter = &e;
        } else if (e.key == "values") {
            if (values) p.fail(e, "duplicate key");
            values = &e;
        } else if (e.key == "output") {
            spec.output_dir = std::filesystem::path(e.value).is_relative() ? base_dir / e.value : std::filesystem::path(e.value);
        } else {
            p.fail(e, "unknown key");
        }
    }
    if (!base) throw ParseError(source_name, 0, "base", "a base scenario is required");
    if (!parameter) throw ParseError(source_name, 0, "parameter", "the swept parameter is required");
    if (!values) throw ParseError(source_name, 0, "values", "a value list is required");

    spec.base = parse_scenario(p.file(*base));
    if (spec.base.phase == ScenarioPhase::combined) p.fail(*base, "the base scenario must be a launch or boost phase");
    try {
        spec.parameter = sweep_parameter_from_string(detail::lower(parameter->value));
    } catch (const ParameterError& err) {
        p.fail(*parameter, err.what());
    }
    spec.values = p.list(*values);

    const bool boost = spec.base.phase == ScenarioPhase::boost;
    if (spec.parameter == SweepParameter::z0 && boost) p.fail(*parameter, "z0 applies to launch scenarios");
    if (spec.parameter == SweepParameter::altitude_f && !boost)
        p.fail(*parameter, "altitude_f applies to boost scenarios");
    for (double v : spec.values) {
        try {
            apply_sweep_value(spec.base, spec.parameter, v).problem(spec.base.model());
        } catch (const Error& err) {
            p.fail(*values, std::string("value ") + std::to_string(v) + ": " + err.what());
        }
    }
    return spec;
}

ScenarioSpec apply_sweep_value(const ScenarioSpec& base, SweepParameter parameter, double value) {
    if (!std::isfinite(value)) throw ParameterError("sweep values must be finite");
    ScenarioSpec s = base;
    const bool boost = base.phase == ScenarioPhase::boost;
    switch (parameter) {
        case SweepParameter::theta_exit:
            if (boost) s.initial.theta = value * detail::kDeg;
            else s.terminal[kTheta] = value * detail::kDeg;
            break;
        case SweepParameter::z0:
            s.initial.z = value;
            break;
        case SweepParameter::tf: {
            const double ratio = value / s.dt;
            if (!(value > 0.0) || std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
                throw ParameterError("t_f must be a multiple of dt");
            s.final_time = value;
            break;
        }
        case SweepParameter::uf:
            s.terminal[kU] = value;
            break;
        case SweepParameter::altitude_f:
            s.terminal[kDepth] = -value;
            break;
    }
    s.name = base.name + "@" + to_string(parameter) + "=" + std::to_string(value);
    return s;
}

bool SweepRow::dominates_baseline() const {
    return converged() && baseline_feasible && cost <= baseline_cost * 1.01;
}

SweepRow run_sweep_row(const ScenarioSpec& base, SweepParameter parameter, double value) {
    SweepRow row;
    row.value = value;
    row.cost = kNaN;
    row.max_residual = kNaN;
    row.baseline_cost = kNaN;
    try {
        const ScenarioSpec s = apply_sweep_value(base, parameter, value);
        const TranscribedProblem pb = s.problem();
        const OptimizationResult r = pb.free.empty() ? solve(pb, s.solver) : solve_with_free_parameters(pb, s.solver);
        row.status = to_string(r.status);
        row.cost = r.cost;
        row.max_residual = r.max_residual;
        row.iterations = r.iterations;
        row.inner_iterations = r.inner_iterations;
        for (const auto& f : r.free_values) row.free_values.push_back(f.second);
        row.message = r.message;
        const BaselineResult b = constant_thrust_baseline(pb, kU, s.solver.constraint_tolerance);
        row.baseline_found = b.found;
        row.baseline_feasible = b.feasible;
        if (b.found) row.baseline_cost = b.cost;
    } catch (const Error& err) {
        row.status = "error";
        row.message = err.what();
    }
    return row;
}

SweepTable run_sweep(const SweepSpec& spec, int jobs,
                     const std::function<void(std::size_t index, const SweepRow& row)>& on_row) {
    if (spec.values.empty()) throw ParameterError("sweep: the value list is empty");
    SweepTable table;
    table.parameter = spec.parameter;
    for (const auto& f : spec.base.free) table.free.push_back(f.kind);
    table.rows.resize(spec.values.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < spec.values.size(); i = next++) {
            table.rows[i] = run_sweep_row(spec.base, spec.parameter, spec.values[i]);
            if (on_row) on_row(i, table.rows[i]);
        }
    };
    const auto count = static_cast<std::size_t>(std::max(1, jobs));
    if (count == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < std::min(count, spec.values.size()); ++t) pool.emplace_back(worker);
    }
    return table;
}

CombinedCostReport combined_cost(const SweepTable& launch, const SweepTable& boost,
                                 std::optional<double> vertical_launch_cost, bool vertical_converged) {
    if (launch.parameter != SweepParameter::theta_exit || boost.parameter != SweepParameter::theta_exit)
        throw AlignmentError("combined cost: both tables must sweep theta_exit");
    if (launch.rows.empty() || boost.rows.empty()) throw AlignmentError("combined cost: empty result set");
    if (launch.rows.size() != boost.rows.size())
        throw AlignmentError("combined cost: launch and boost sets have different lengths");

    CombinedCostReport report;
    for (std::size_t i = 0; i < launch.rows.size(); ++i) {
        const SweepRow& l = launch.rows[i];
        const SweepRow& b = boost.rows[i];
        if (l.value != b.value)
            throw AlignmentError("combined cost: angle " + std::to_string(l.value) + " has no boost counterpart");
        CombinedCostRow row{"horizontal", l.value, l.cost, b.cost, l.cost + b.cost, l.converged() && b.converged()};
        report.rows.push_back(row);
        if (row.converged && (!report.argmin || row.total < report.rows[*report.argmin].total)) report.argmin = i;
    }
    if (vertical_launch_cost) {
        const SweepRow* b90 = nullptr;
        for (const auto& b : boost.rows)
            if (b.value == 90.0) b90 = &b;
        if (!b90) throw AlignmentError("combined cost: the vertical row needs a 90 deg boost result");
        report.vertical = CombinedCostRow{"vertical", 90.0, *vertical_launch_cost, b90->cost,
                                          *vertical_launch_cost + b90->cost, vertical_converged && b90->converged()};
    }
    return report;
}

}  // namespace hydroboost
