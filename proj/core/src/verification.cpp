#include "hydroboost/verification.hpp"

#include <cmath>
#include <cstdio>

#include "hydroboost/nlp.hpp"
#include "hydroboost/optimal_control.hpp"

namespace hydroboost {

namespace {

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// Exact propagation of the double integrator under a piecewise-linear control.
void propagate(const Eigen::VectorXd& u, double h, double& x, double& v) {
    x = 0.0;
    v = 0.0;
    for (Eigen::Index k = 0; k + 1 < u.size(); ++k) {
        const double a = u(k);
        const double b = u(k + 1);
        x += v * h + h * h * (a / 3.0 + b / 6.0);
        v += 0.5 * h * (a + b);
    }
}

}  // namespace

OracleCheck double_integrator_oracle(int intervals) {
    const int n = intervals + 1;
    const double h = 1.0 / intervals;
    NlpProblem pb;
    pb.n = n;
    pb.m = 2;
    pb.lower = Eigen::VectorXd::Constant(n, -100.0);
    pb.upper = Eigen::VectorXd::Constant(n, 100.0);
    auto weight = [&](int k) { return (k == 0 || k == n - 1) ? 0.5 * h : h; };
    pb.objective = [&](const Eigen::VectorXd& u, Eigen::VectorXd& g) {
        double f = 0.0;
        for (int k = 0; k < n; ++k) {
            f += weight(k) * u(k) * u(k);
            g(k) = 2.0 * weight(k) * u(k);
        }
        return f;
    };
    pb.curvature = [&](const Eigen::VectorXd&) {
        Eigen::VectorXd c(n);
        for (int k = 0; k < n; ++k) c(k) = 2.0 * weight(k);
        return c;
    };
    pb.constraints = [&](const Eigen::VectorXd& u, Eigen::VectorXd& c) {
        double x = 0.0, v = 0.0;
        propagate(u, h, x, v);
        c(0) = x - 1.0;
        c(1) = v;
        return true;
    };
    pb.fd_step = Eigen::VectorXd::Constant(n, 1e-6);
    pb.constraint_tolerance = Eigen::VectorXd::Constant(2, 1e-8);
    NlpSettings settings;
    settings.gradient_tolerance = 1e-7;
    const NlpResult r = solve_nlp(pb, Eigen::VectorXd::Zero(n), settings);

    // R^2 of the control against the analytic law.
    double ss_res = 0.0, ss_tot = 0.0, mean = 0.0;
    for (int k = 0; k < n; ++k) mean += r.x(k) / n;
    for (int k = 0; k < n; ++k) {
        const double t = k * h;
        ss_res += std::pow(r.x(k) - (6.0 - 12.0 * t), 2);
        ss_tot += std::pow(r.x(k) - mean, 2);
    }
    const double r2 = 1.0 - ss_res / ss_tot;
    OracleCheck c{"double integrator minimum effort", r.objective, 12.0, false, ""};
    c.passed = r.status == NlpStatus::converged && std::abs(r.objective - 12.0) <= 0.12 && r2 > 0.999;
    c.detail = fmt("J = %.6f, R^2 against 6 - 12t = %.6f", r.objective, r2) + ", " + to_string(r.status);
    c.fit = r2;
    return c;
}

OracleCheck rk4_order_oracle() {
    auto f = [](double x, const ControlSample&) { return x; };
    auto error = [&](int steps) {
        double x = 1.0;
        const double h = 1.0 / steps;
        for (int i = 0; i < steps; ++i) x = rk4_step(f, x, h, {}, {}, {});
        return std::abs(x - std::exp(1.0));
    };
    const double e1 = error(10);
    const double e2 = error(20);
    const double order = std::log2(e1 / e2);
    OracleCheck c{"RK4 order on x' = x", order, 4.0, order >= 3.8 && order <= 4.2, ""};
    c.detail = fmt("errors %.3e (h = 0.1), %.3e (h = 0.05)", e1, e2);
    return c;
}

OracleCheck trapezoid_constant_oracle() {
    const ControlProgram p = ControlProgram::constant(0.2, 0.4, {1000.0, 0.0});
    const double j = effort_cost(p);
    OracleCheck c{"trapezoid, constant 1000 N over 0.4 s", j, 4.0e5, std::abs(j - 4.0e5) <= 1e-9 * 4.0e5, ""};
    c.detail = fmt("J = %.10g N^2 s", j);
    return c;
}

OracleCheck trapezoid_ramp_oracle() {
    const double h = 0.2;
    std::vector<ControlSample> s;
    for (int k = 0; k <= 5; ++k) s.push_back({1000.0 * k * h, 0.0});
    const double j = effort_cost(ControlProgram(h, s));
    const double exact = 1.0e6 / 3.0;
    const double bound = h * h / 12.0 * 2.0e6;
    const double ratio = (j - exact) / bound;
    OracleCheck c{"trapezoid error on a ramp against the h^2 bound", ratio, 1.0, ratio >= 0.5 && ratio <= 2.0, ""};
    c.detail = fmt("error %.6g, bound %.6g", j - exact, bound);
    return c;
}

std::vector<OracleCheck> run_oracles() {
    return {double_integrator_oracle(), rk4_order_oracle(), trapezoid_constant_oracle(), trapezoid_ramp_oracle()};
}

}  // namespace hydroboost
