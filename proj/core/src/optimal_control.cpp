#include "hydroboost/optimal_control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hydroboost/autopilot.hpp"
#include "hydroboost/error.hpp"

namespace hydroboost {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kDeg = std::numbers::pi / 180.0;

// Natural units per solver unit for each terminal component.
double residual_unit(int index) { return index == kQ || index == kTheta ? kDeg : 1.0; }

constexpr double kScalarUnit = 100.0;

double trapezoid_weight(int k, int samples) { return k == 0 || k == samples - 1 ? 0.5 : 1.0; }

class Shooter {
public:
    explicit Shooter(const TranscribedProblem& pb) : pb_(pb), per_interval_(pb.integrator.substeps(pb.dt)) {
        for (int i = 0; i < 5; ++i)
            if (target_source(i) != Source::free_component) indices_.push_back(i);
    }

    const std::vector<int>& indices() const { return indices_; }

    LongitudinalState initial(const VectorXd& dec) const {
        LongitudinalState x0 = pb_.boundary.initial;
        for (std::size_t s = 0; s < pb_.free.size(); ++s)
            if (pb_.free[s].kind == FreeKind::initial_depth) x0.z = dec(scalar_offset() + static_cast<int>(s));
        return x0;
    }

    double target(int index, const VectorXd& dec) const {
        for (std::size_t s = 0; s < pb_.free.size(); ++s) {
            const double value = dec(scalar_offset() + static_cast<int>(s));
            if (index == kU && pb_.free[s].kind == FreeKind::terminal_velocity) return value;
            if (index == kDepth && pb_.free[s].kind == FreeKind::terminal_altitude) return -value;
        }
        return *pb_.boundary.terminal[static_cast<std::size_t>(index)];
    }

    int scalar_offset() const { return pb_.controls_per_sample() * pb_.samples(); }

    ControlProgram program(const VectorXd& dec) const { return decode_program(dec, pb_); }

    // Propagates from node `start` (state `xs`) to t_f; records node states when asked.
    bool run(const ControlProgram& prog, int start, const LongitudinalState& xs, LongitudinalState& final_state,
             std::vector<LongitudinalState>* nodes, std::string* diagnostic = nullptr) const {
        try {
            if (pb_.phase == Phase::launch) {
                auto f = [this](const LongitudinalState& x, const ControlSample& c) {
                    return launch_derivative(x, c.thrust, pb_.model);
                };
                final_state = march(f, prog, start, xs, nodes);
            } else {
                auto f = [this](const LongitudinalState& x, const ControlSample& c) {
                    return boost_derivative(x, {c.thrust, c.deflection}, pb_.model);
                };
                final_state = march(f, prog, start, xs, nodes);
            }
        } catch (const std::exception& e) {
            if (diagnostic) *diagnostic = e.what();
            return false;
        }
        if (!detail::finite_state(final_state)) {
            if (diagnostic) *diagnostic = "state became non-finite";
            return false;
        }
        return true;
    }

    void residuals(const LongitudinalState& xf, const VectorXd& dec, VectorXd& out) const {
        out.resize(static_cast<Eigen::Index>(indices_.size()));
        for (std::size_t r = 0; r < indices_.size(); ++r) {
            const int i = indices_[r];
            out(static_cast<Eigen::Index>(r)) = xf[i] - target(i, dec);
        }
    }

private:
    enum class Source { fixed, scalar, free_component };

    Source target_source(int index) const {
        for (const auto& s : pb_.free) {
            if (index == kU && s.kind == FreeKind::terminal_velocity) return Source::scalar;
            if (index == kDepth && s.kind == FreeKind::terminal_altitude) return Source::scalar;
        }
        return pb_.boundary.terminal[static_cast<std::size_t>(index)] ? Source::fixed : Source::free_component;
    }

    template <class F>
    LongitudinalState march(F& f, const ControlProgram& prog, int start, const LongitudinalState& xs,
                            std::vector<LongitudinalState>* nodes) const {
        const double h = pb_.integrator.step;
        const Interpolation mode = pb_.integrator.interpolation;
        const int m = per_interval_;
        LongitudinalState x = xs;
        for (int k = start; k < pb_.intervals; ++k) {
            if (nodes) (*nodes)[static_cast<std::size_t>(k)] = x;
            const auto kk = static_cast<std::size_t>(k);
            for (int j = 0; j < m; ++j) {
                x = rk4_step(f, x, h, prog.at_interval(kk, static_cast<double>(j) / m, mode),
                             prog.at_interval(kk, (j + 0.5) / m, mode),
                             prog.at_interval(kk, static_cast<double>(j + 1) / m, mode));
            }
        }
        if (nodes) (*nodes)[static_cast<std::size_t>(pb_.intervals)] = x;
        return x;
    }

    const TranscribedProblem& pb_;
    int per_interval_;
    std::vector<int> indices_;
};

VectorXd variable_scale(const TranscribedProblem& pb) {
    const int n = pb.decision_size();
    const int s = pb.samples();
    VectorXd scale(n);
    scale.head(s).setConstant(pb.bounds.thrust_max);
    if (pb.phase == Phase::boost) scale.segment(s, s).setConstant(pb.bounds.deflection_max);
    for (std::size_t i = 0; i < pb.free.size(); ++i) scale(n - static_cast<int>(pb.free.size()) + static_cast<int>(i)) = kScalarUnit;
    return scale;
}

void natural_bounds(const TranscribedProblem& pb, VectorXd& lower, VectorXd& upper) {
    const int n = pb.decision_size();
    const int s = pb.samples();
    lower.resize(n);
    upper.resize(n);
    lower.head(s).setConstant(pb.bounds.thrust_min);
    upper.head(s).setConstant(pb.bounds.thrust_max);
    if (pb.phase == Phase::boost) {
        lower.segment(s, s).setConstant(-pb.bounds.deflection_max);
        upper.segment(s, s).setConstant(pb.bounds.deflection_max);
    }
    const int off = pb.controls_per_sample() * s;
    for (std::size_t i = 0; i < pb.free.size(); ++i) {
        lower(off + static_cast<int>(i)) = pb.free[i].lower;
        upper(off + static_cast<int>(i)) = pb.free[i].upper;
    }
}

VectorXd default_guess(const TranscribedProblem& pb) {
    VectorXd lower, upper;
    natural_bounds(pb, lower, upper);
    VectorXd guess = 0.5 * (lower + upper);
    const int s = pb.samples();
    if (pb.phase == Phase::boost) guess.segment(s, s).setZero();
    const BaselineResult base = constant_thrust_baseline(pb, kU);
    guess.head(s).setConstant(base.found ? base.thrust : 0.5 * (pb.bounds.thrust_min + pb.bounds.thrust_max));
    return guess;
}

SolverStatus map_status(NlpStatus status) {
    switch (status) {
        case NlpStatus::converged: return SolverStatus::converged;
        case NlpStatus::max_iterations: return SolverStatus::max_iterations;
        case NlpStatus::infeasible:
        case NlpStatus::evaluation_failed: return SolverStatus::infeasible;
    }
    return SolverStatus::infeasible;
}

}  // namespace

const char* to_string(Phase phase) { return phase == Phase::launch ? "launch" : "boost"; }

const char* to_string(FreeKind kind) {
    switch (kind) {
        case FreeKind::initial_depth: return "initial_depth";
        case FreeKind::terminal_velocity: return "terminal_velocity";
        case FreeKind::terminal_altitude: return "terminal_altitude";
    }
    return "unknown";
}

const char* to_string(SolverStatus status) {
    switch (status) {
        case SolverStatus::converged: return "converged";
        case SolverStatus::infeasible: return "infeasible";
        case SolverStatus::max_iterations: return "max_iterations";
    }
    return "unknown";
}

int BoundarySpec::fixed_count() const {
    return static_cast<int>(std::count_if(terminal.begin(), terminal.end(), [](const auto& v) { return v.has_value(); }));
}

void ControlBounds::validate() const {
    if (!(thrust_min >= 0.0) || !(thrust_max >= thrust_min) || !std::isfinite(thrust_max))
        throw ParameterError("control bounds: need 0 <= thrust_min <= thrust_max < inf");
    if (!(thrust_max > 0.0)) throw ParameterError("control bounds: thrust_max must be positive");
    if (!(deflection_max > 0.0) || !std::isfinite(deflection_max))
        throw ParameterError("control bounds: deflection limit must be positive");
}

void TranscribedProblem::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("problem: dt must be positive");
    if (intervals < 2) throw ParameterError("problem: at least two control intervals are required");
    bounds.validate();
    integrator.validate(dt);
    if (weights.thrust < 0.0 || weights.deflection < 0.0) throw ParameterError("problem: effort weights must be >= 0");
    bool targeted = boundary.fixed_count() > 0;
    for (const auto& s : free) {
        if (!std::isfinite(s.lower) || !std::isfinite(s.upper) || s.lower > s.upper)
            throw ParameterError(std::string("problem: free ") + to_string(s.kind) + " needs a finite, ordered box");
        if (s.kind != FreeKind::initial_depth) targeted = true;
        if (s.kind == FreeKind::initial_depth && phase != Phase::launch)
            throw ParameterError("problem: initial depth is a launch-phase parameter");
        if (s.kind == FreeKind::terminal_altitude && phase != Phase::boost)
            throw ParameterError("problem: terminal altitude is a boost-phase parameter");
    }
    for (std::size_t i = 0; i < free.size(); ++i)
        for (std::size_t j = i + 1; j < free.size(); ++j)
            if (free[i].kind == free[j].kind) throw ParameterError("problem: free parameter declared twice");
    if (!targeted) throw ParameterError("problem: at least one terminal component must be fixed");
    for (const auto& t : boundary.terminal)
        if (t && !std::isfinite(*t)) throw ParameterError("problem: terminal values must be finite");
}

double effort_cost(const ControlProgram& program, const EffortWeights& weights) {
    const auto& s = program.samples();
    if (s.size() < 2) throw ParameterError("effort_cost: at least two samples are required");
    double sum = 0.0;
    const int n = static_cast<int>(s.size());
    for (int k = 0; k < n; ++k) {
        const auto& c = s[static_cast<std::size_t>(k)];
        double term = weights.thrust * c.thrust * c.thrust;
        if (weights.deflection > 0.0) term += weights.deflection * c.deflection * c.deflection;
        sum += trapezoid_weight(k, n) * term;
    }
    return program.dt() * sum;
}

ControlProgram decode_program(const Eigen::VectorXd& decision, const TranscribedProblem& problem) {
    const int s = problem.samples();
    if (decision.size() != problem.decision_size()) throw ParameterError("decision vector has the wrong size");
    std::vector<ControlSample> samples(static_cast<std::size_t>(s));
    for (int k = 0; k < s; ++k) {
        samples[static_cast<std::size_t>(k)].thrust = decision(k);
        if (problem.phase == Phase::boost) samples[static_cast<std::size_t>(k)].deflection = decision(s + k);
    }
    return ControlProgram(problem.dt, std::move(samples));
}

ResidualEvaluation terminal_residuals(const Eigen::VectorXd& decision, const TranscribedProblem& problem) {
    problem.validate();
    VectorXd lower, upper;
    natural_bounds(problem, lower, upper);
    const VectorXd dec = project_box(decision, lower, upper);

    const Shooter shooter(problem);
    ResidualEvaluation out;
    out.indices = shooter.indices();
    LongitudinalState xf;
    if (!shooter.run(shooter.program(dec), 0, shooter.initial(dec), xf, nullptr, &out.diagnostic)) {
        out.ok = false;
        out.values = VectorXd::Constant(static_cast<Eigen::Index>(out.indices.size()), kFailedResidual);
        return out;
    }
    shooter.residuals(xf, dec, out.values);
    return out;
}

namespace {

OptimizationResult solve_from(const TranscribedProblem& problem, const SolverConfig& config,
                              const std::optional<Eigen::VectorXd>& initial_guess) {
    problem.validate();
    if (!(config.constraint_tolerance > 0.0) || !(config.gradient_tolerance > 0.0))
        throw ParameterError("solver: tolerances must be positive");

    const Shooter shooter(problem);
    const int n = problem.decision_size();
    const int s = problem.samples();
    const int m = static_cast<int>(shooter.indices().size());
    const VectorXd scale = variable_scale(problem);
    VectorXd lower, upper;
    natural_bounds(problem, lower, upper);

    VectorXd unit(m);
    for (int r = 0; r < m; ++r) unit(r) = residual_unit(shooter.indices()[static_cast<std::size_t>(r)]);

    // Separable quadratic objective J / (T_max^2 dt) in scaled variables.
    VectorXd quad = VectorXd::Zero(n);
    for (int k = 0; k < s; ++k) {
        quad(k) = problem.weights.thrust * trapezoid_weight(k, s);
        if (problem.phase == Phase::boost) {
            const double ratio = problem.bounds.deflection_max / problem.bounds.thrust_max;
            quad(s + k) = problem.weights.deflection * ratio * ratio * trapezoid_weight(k, s);
        }
    }

    NlpProblem nlp;
    nlp.n = n;
    nlp.m = m;
    nlp.lower = lower.cwiseQuotient(scale);
    nlp.upper = upper.cwiseQuotient(scale);
    nlp.objective = [&quad](const VectorXd& x, VectorXd& grad) {
        grad = 2.0 * quad.cwiseProduct(x);
        return quad.dot(x.cwiseProduct(x));
    };
    nlp.curvature = [&quad](const VectorXd&) -> VectorXd { return 2.0 * quad; };
    nlp.constraints = [&](const VectorXd& x, VectorXd& c) {
        const VectorXd dec = x.cwiseProduct(scale);
        LongitudinalState xf;
        if (!shooter.run(shooter.program(dec), 0, shooter.initial(dec), xf, nullptr)) return false;
        shooter.residuals(xf, dec, c);
        c = c.cwiseQuotient(unit);
        return true;
    };

    VectorXd step(n);
    for (int j = 0; j < n; ++j) {
        double h = config.fd_relative_step;
        if (j < s) h = std::max(h, config.thrust_fd_floor / scale(j));
        step(j) = h;
    }
    nlp.fd_step = step;
    nlp.constraint_tolerance = VectorXd::Constant(m, config.constraint_tolerance);

    // Jacobian: perturbed propagations restart from the stored node before the sample.
    nlp.jacobian = [&](const VectorXd& x, const VectorXd& c, MatrixXd& jac) {
        jac.resize(m, n);
        const VectorXd dec = x.cwiseProduct(scale);
        const ControlProgram base = shooter.program(dec);
        std::vector<LongitudinalState> nodes(static_cast<std::size_t>(problem.intervals) + 1);
        LongitudinalState xf;
        if (!shooter.run(base, 0, shooter.initial(dec), xf, &nodes)) return false;

        std::vector<ControlSample> samples = base.samples();
        VectorXd r(m);
        auto perturbed = [&](int j, double h, VectorXd& dp, LongitudinalState& xp) {
            dp = dec;
            dp(j) += h * scale(j);
            if (j < problem.controls_per_sample() * s) {
                const int k = j % s;
                auto& sample = samples[static_cast<std::size_t>(k)];
                const ControlSample saved = sample;
                if (j < s) sample.thrust = dp(j);
                else sample.deflection = dp(j);
                const int start = std::max(k - 1, 0);
                const bool ok = shooter.run(ControlProgram(problem.dt, samples), start,
                                            nodes[static_cast<std::size_t>(start)], xp, nullptr);
                sample = saved;
                return ok;
            }
            const FreeKind kind = problem.free[static_cast<std::size_t>(j - problem.controls_per_sample() * s)].kind;
            if (kind == FreeKind::initial_depth) return shooter.run(base, 0, shooter.initial(dp), xp, nullptr);
            xp = xf;
            return true;
        };
        for (int j = 0; j < n; ++j) {
            double h = step(j);
            if (x(j) + h > nlp.upper(j)) h = -h;
            VectorXd dp;
            LongitudinalState xp;
            // Near a failing trajectory, try the other side and then a shorter step.
            bool ok = false;
            for (double factor : {1.0, -1.0, 1e-2, -1e-2}) {
                const double trial = h * factor;
                if (x(j) + trial > nlp.upper(j) || x(j) + trial < nlp.lower(j)) continue;
                if ((ok = perturbed(j, trial, dp, xp))) {
                    h = trial;
                    break;
                }
            }
            if (!ok) return false;
            shooter.residuals(xp, dp, r);
            jac.col(j) = (r.cwiseQuotient(unit) - c) / h;
        }
        return true;
    };

    NlpSettings settings;
    settings.gradient_tolerance = config.gradient_tolerance;
    settings.penalty_growth = config.penalty_growth;
    settings.penalty_cap = config.penalty_cap;
    settings.max_outer = config.max_outer;
    settings.max_inner = config.max_inner;

    VectorXd guess = initial_guess ? *initial_guess : default_guess(problem);
    if (guess.size() != n) throw ParameterError("solve: initial guess has the wrong size");
    const NlpResult nr = solve_nlp(nlp, guess.cwiseQuotient(scale), settings);

    OptimizationResult result;
    const VectorXd dec = project_box(nr.x.cwiseProduct(scale), lower, upper);
    result.program = decode_program(dec, problem);
    result.cost = effort_cost(result.program, problem.weights);
    result.iterations = nr.outer_iterations;
    result.inner_iterations = nr.inner_iterations;
    result.initial_state = shooter.initial(dec);
    for (std::size_t i = 0; i < problem.free.size(); ++i)
        result.free_values.emplace_back(problem.free[i].kind, dec(shooter.scalar_offset() + static_cast<int>(i)));
    result.status = map_status(nr.status);
    result.message = nr.message;

    const ResidualEvaluation res = terminal_residuals(dec, problem);
    for (int r = 0; r < m; ++r) {
        result.residuals.push_back({res.indices[static_cast<std::size_t>(r)], res.values(r)});
        result.max_residual = std::max(result.max_residual, std::abs(res.values(r)) / unit(r));
    }
    if (!res.ok) {
        result.status = SolverStatus::infeasible;
        result.message = "final iterate cannot be propagated: " + res.diagnostic;
        return result;
    }
    if (result.status == SolverStatus::converged && !(result.max_residual < config.constraint_tolerance)) {
        result.status = SolverStatus::max_iterations;
        result.message = "terminal residual above tolerance after convergence test";
    }
    try {
        result.trajectory = problem.phase == Phase::launch
                                ? simulate_launch(problem.model, result.initial_state, result.program,
                                                  problem.final_time(), problem.integrator)
                                : simulate_boost(problem.model, result.initial_state, result.program,
                                                 problem.final_time(), problem.integrator);
    } catch (const Error& e) {
        result.status = SolverStatus::infeasible;
        result.message = e.what();
    }
    return result;
}

// Boost start for when the constant-thrust guess fails: the pitch autopilot
// flies a ramp-hold-ramp attitude program under constant thrust; the best
// such flight supplies thrust and the deflections it applied.
std::optional<VectorXd> pitch_program_guess(const TranscribedProblem& pb) {
    const Shooter shooter(pb);
    VectorXd lower, upper;
    natural_bounds(pb, lower, upper);
    VectorXd guess = 0.5 * (lower + upper);
    const LongitudinalState x0 = shooter.initial(guess);
    const double tf = pb.final_time();
    const double theta_end = pb.boundary.terminal[kTheta].value_or(0.0);

    std::optional<PitchAutopilot> autopilot;
    try {
        autopilot = PitchAutopilot::synthesize(pb.model, x0.theta, pb.bounds.thrust_max, pb.bounds.deflection_max);
    } catch (const Error&) {
        return std::nullopt;
    }

    const int s = pb.samples();
    double best = std::numeric_limits<double>::infinity();
    Trajectory<LongitudinalState> best_traj;
    double best_thrust = 0.0;
    for (int ti = 4; ti <= 10; ++ti) {
        const double thrust = std::clamp(0.1 * ti * pb.bounds.thrust_max, pb.bounds.thrust_min, pb.bounds.thrust_max);
        for (int hi = 0; hi < 12; ++hi) {
            const double hold = (30.0 + 5.0 * hi) * kDeg;
            for (int ji = 0; ji <= 6; ++ji) {
                const double rise = std::min(2.0, 0.2 * tf);
                const double fall_end = std::max(rise, tf - 1.0);
                const double t1 = rise + ji * (fall_end - rise) * 0.75 / 6.0;
                std::vector<double> ref(static_cast<std::size_t>(s));
                for (int k = 0; k < s; ++k) {
                    const double t = k * pb.dt;
                    double r = hold;
                    if (t < rise) r = x0.theta + (hold - x0.theta) * t / rise;
                    else if (t >= fall_end) r = theta_end;
                    else if (t > t1) r = hold + (theta_end - hold) * (t - t1) / (fall_end - t1);
                    ref[static_cast<std::size_t>(k)] = r;
                }
                try {
                    const auto traj = closed_loop_boost(pb.model, x0, ControlProgram(pb.dt, std::vector<ControlSample>(static_cast<std::size_t>(s), {thrust, 0.0})),
                                                        ref, *autopilot, tf, BoostPlant::simplified, pb.integrator);
                    const auto& xf = traj.final_state();
                    double score = 0.0;
                    for (int index : shooter.indices())
                        score += std::pow((xf[index] - shooter.target(index, guess)) / residual_unit(index), 2);
                    if (score < best) {
                        best = score;
                        best_traj = traj;
                        best_thrust = thrust;
                    }
                } catch (const Error&) {
                }
            }
        }
    }
    if (best_traj.empty()) return std::nullopt;
    std::size_t i = 0;
    for (int k = 0; k < s; ++k) {
        const double t = k * pb.dt;
        while (i + 1 < best_traj.times.size() && best_traj.times[i] < t - 1e-9) ++i;
        guess(k) = best_thrust;
        guess(s + k) = std::clamp(best_traj.controls[i].deflection, -pb.bounds.deflection_max, pb.bounds.deflection_max);
    }
    return guess;
}

}  // namespace

OptimizationResult solve(const TranscribedProblem& problem, const SolverConfig& config,
                         const std::optional<Eigen::VectorXd>& initial_guess) {
    OptimizationResult result = solve_from(problem, config, initial_guess);
    if (initial_guess || result.converged() || problem.phase != Phase::boost) return result;
    const auto fallback = pitch_program_guess(problem);
    if (!fallback) return result;
    OptimizationResult second = solve_from(problem, config, fallback);
    second.iterations += result.iterations;
    second.inner_iterations += result.inner_iterations;
    if (second.converged() || second.max_residual < result.max_residual) {
        second.message = "restarted from an autopilot-flown pitch program" +
                         (second.message.empty() ? std::string() : ": " + second.message);
        return second;
    }
    return result;
}

OptimizationResult solve_with_free_parameters(const TranscribedProblem& problem, const SolverConfig& config) {
    if (problem.free.empty()) throw ParameterError("solve_with_free_parameters: no free parameter declared");
    return solve(problem, config);
}

BaselineResult constant_thrust_baseline(const TranscribedProblem& problem, int component, double tolerance) {
    problem.validate();
    if (component < 0 || component > 4) throw ParameterError("baseline: component index out of range");
    const Shooter shooter(problem);
    const auto& idx = shooter.indices();
    const auto it = std::find(idx.begin(), idx.end(), component);
    BaselineResult out;
    if (it == idx.end()) return out;
    const auto slot = static_cast<Eigen::Index>(it - idx.begin());

    VectorXd lower, upper;
    natural_bounds(problem, lower, upper);
    VectorXd dec = 0.5 * (lower + upper);
    const int s = problem.samples();
    if (problem.phase == Phase::boost) dec.segment(s, s).setZero();

    // Propagation failures count as undershooting the target.
    auto miss = [&](double thrust) {
        dec.head(s).setConstant(thrust);
        LongitudinalState xf;
        if (!shooter.run(shooter.program(dec), 0, shooter.initial(dec), xf, nullptr))
            return -std::numeric_limits<double>::infinity();
        VectorXd r;
        shooter.residuals(xf, dec, r);
        return r(slot);
    };

    double lo = problem.bounds.thrust_min, hi = problem.bounds.thrust_max;
    double f_lo = miss(lo), f_hi = miss(hi);
    if (f_lo == 0.0) hi = lo;
    else if (f_hi == 0.0) lo = hi;
    else if ((f_lo < 0.0) == (f_hi < 0.0) || !std::isfinite(f_hi)) return out;
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = miss(mid);
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    out.found = true;
    out.thrust = 0.5 * (lo + hi);
    dec.head(s).setConstant(out.thrust);
    out.cost = effort_cost(shooter.program(dec), problem.weights);

    LongitudinalState xf;
    if (!shooter.run(shooter.program(dec), 0, shooter.initial(dec), xf, nullptr)) return out;
    VectorXd r;
    shooter.residuals(xf, dec, r);
    out.feasible = true;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const double value = r(static_cast<Eigen::Index>(i));
        out.residuals.push_back({idx[i], value});
        if (std::abs(value) / residual_unit(idx[i]) >= tolerance) out.feasible = false;
    }
    return out;
}

}  // namespace hydroboost
