#include "hydroboost/nlp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hydroboost/error.hpp"

namespace hydroboost {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

double inf_norm(const VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// Violation measured in units of each constraint's tolerance.
double violation(const VectorXd& c, const VectorXd& tol) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < c.size(); ++i) worst = std::max(worst, std::abs(c(i)) / tol(i));
    return worst;
}

bool fd_jacobian(const NlpProblem& pb, const VectorXd& x, const VectorXd& c, MatrixXd& jac, int& evaluations) {
    jac.resize(pb.m, pb.n);
    VectorXd xt = x;
    VectorXd ct(pb.m);
    for (int j = 0; j < pb.n; ++j) {
        double h = pb.fd_step(j);
        if (x(j) + h > pb.upper(j)) h = -h;
        xt(j) = x(j) + h;
        ++evaluations;
        bool ok = pb.constraints(xt, ct);
        if (!ok) {
            h = -h;
            xt(j) = x(j) + h;
            ++evaluations;
            ok = pb.constraints(xt, ct);
        }
        xt(j) = x(j);
        if (!ok) return false;
        jac.col(j) = (ct - c) / h;
    }
    return true;
}

struct Iterate {
    VectorXd x;
    VectorXd c;
    VectorXd grad;  // objective gradient
    double f = 0.0;
};

class Solver {
public:
    Solver(const NlpProblem& pb, const NlpSettings& settings) : pb_(pb), settings_(settings) {}

    NlpResult run(const VectorXd& x0) {
        NlpResult result;
        Iterate it;
        it.x = project_box(x0, pb_.lower, pb_.upper);
        it.c.resize(pb_.m);
        it.grad.resize(pb_.n);
        ++evaluations_;
        if (!pb_.constraints(it.x, it.c)) {
            result.x = it.x;
            result.status = NlpStatus::evaluation_failed;
            result.message = "constraints cannot be evaluated at the initial point";
            return result;
        }
        it.f = pb_.objective(it.x, it.grad);
        init_hessian(it.x);

        VectorXd lambda = VectorXd::Zero(pb_.m);
        double mu = std::clamp(10.0 * std::max(1.0, std::abs(it.f)) / std::max(1.0, 0.5 * it.c.squaredNorm()), 1e-8,
                               1e8);
        double omega = std::max(settings_.gradient_tolerance, 0.1);
        double previous = kInf;
        double pg = kInf;

        result.status = NlpStatus::max_iterations;
        int outer = 0;
        for (outer = 1; outer <= settings_.max_outer; ++outer) {
            pg = inner(it, lambda, mu, omega);
            lambda += mu * it.c;
            const double viol = violation(it.c, pb_.constraint_tolerance);
            if (viol <= 1.0 && pg <= settings_.gradient_tolerance) {
                result.status = NlpStatus::converged;
                break;
            }
            if (viol > 1.0 && viol > 0.5 * previous) {
                if (mu >= settings_.penalty_cap && viol > 0.99 * previous) {
                    result.status = NlpStatus::infeasible;
                    result.message = "penalty at its cap without progress on the constraints";
                    break;
                }
                mu = std::min(mu * settings_.penalty_growth, settings_.penalty_cap);
            }
            omega = std::max(settings_.gradient_tolerance, 0.1 * omega);
            previous = viol;
        }

        result.x = it.x;
        result.c = it.c;
        result.multipliers = lambda;
        result.objective = it.f;
        result.projected_gradient = pg;
        result.penalty = mu;
        result.outer_iterations = std::min(outer, settings_.max_outer);
        result.inner_iterations = inner_total_;
        result.constraint_evaluations = evaluations_;
        if (result.status == NlpStatus::max_iterations && result.message.empty())
            result.message = "outer iteration limit reached";
        return result;
    }

private:
    double merit(const Iterate& it, const VectorXd& lambda, double mu) const {
        return it.f + lambda.dot(it.c) + 0.5 * mu * it.c.squaredNorm();
    }

    bool jacobian(const Iterate& it, MatrixXd& jac) {
        if (pb_.m == 0) {
            jac.resize(0, pb_.n);
            return true;
        }
        if (pb_.jacobian) {
            ++jacobians_;
            return pb_.jacobian(it.x, it.c, jac);
        }
        return fd_jacobian(pb_, it.x, it.c, jac, evaluations_);
    }

    // Minimises the augmented Lagrangian to projected-gradient tolerance
    // `omega`; returns the final projected-gradient norm.
    double inner(Iterate& it, const VectorXd& lambda, double mu, double omega) {
        const int n = pb_.n;
        MatrixXd jac;
        Iterate trial;
        trial.c.resize(pb_.m);
        trial.grad.resize(n);
        double pg = kInf;

        bool have_jac = false;
        for (int k = 0;; ++k) {
            if (!have_jac && !jacobian(it, jac)) return pg;
            have_jac = false;
            const VectorXd y = lambda + mu * it.c;
            const VectorXd g = it.grad + jac.transpose() * y;
            VectorXd metric = hessian_.diagonal();
            if (pb_.m > 0) metric += mu * jac.colwise().squaredNorm().transpose();
            pg = inf_norm(it.x - project_box(it.x - g.cwiseQuotient(metric.cwiseMax(floor_)), pb_.lower, pb_.upper));
            if (pg <= omega || k >= settings_.max_inner) return pg;
            ++inner_total_;

            // Two-metric split: variables held at a bound versus free ones.
            std::vector<int> free_idx;
            for (int i = 0; i < n; ++i) {
                const double eps = std::min(pg, 0.01 * (pb_.upper(i) - pb_.lower(i)));
                const bool at_lower = it.x(i) - pb_.lower(i) <= eps && g(i) > 0.0;
                const bool at_upper = pb_.upper(i) - it.x(i) <= eps && g(i) < 0.0;
                if (!(at_lower || at_upper)) free_idx.push_back(i);
            }
            const int nf = static_cast<int>(free_idx.size());
            MatrixXd hff(nf, nf);
            MatrixXd jf(pb_.m, nf);
            VectorXd gf(nf);
            for (int a = 0; a < nf; ++a) {
                const int i = free_idx[static_cast<std::size_t>(a)];
                gf(a) = g(i);
                jf.col(a) = jac.col(i);
                for (int b = 0; b < nf; ++b) hff(a, b) = hessian_(i, free_idx[static_cast<std::size_t>(b)]);
            }
            if (pb_.m > 0) hff.noalias() += mu * jf.transpose() * jf;
            const double diag_scale = std::max(1e-12, hff.diagonal().cwiseAbs().maxCoeff());

            const double base = merit(it, lambda, mu);
            bool accepted = false;
            for (int attempt = 0; attempt < 8 && !accepted; ++attempt) {
                VectorXd dvec = VectorXd::Zero(n);
                // Held variables follow the scaled gradient towards their bound.
                for (int i = 0; i < n; ++i) dvec(i) = -g(i) / std::max(hessian_(i, i), floor_);
                MatrixXd h = hff;
                h.diagonal().array() += damping_ * diag_scale;
                const Eigen::LLT<MatrixXd> llt(h);
                if (llt.info() != Eigen::Success) {
                    damping_ = std::min(std::max(damping_, 1e-8) * 100.0, 1e8);
                    continue;
                }
                const VectorXd df = -llt.solve(gf);
                for (int a = 0; a < nf; ++a) dvec(free_idx[static_cast<std::size_t>(a)]) = df(a);

                double alpha = 1.0;
                for (int ls = 0; ls < 40; ++ls, alpha *= 0.5) {
                    trial.x = project_box(it.x + alpha * dvec, pb_.lower, pb_.upper);
                    const VectorXd step = trial.x - it.x;
                    if (inf_norm(step) <= 1e-15 * std::max(1.0, inf_norm(it.x))) break;
                    const double slope = g.dot(step);
                    if (slope >= 0.0) continue;
                    ++evaluations_;
                    if (!pb_.constraints(trial.x, trial.c)) continue;
                    trial.f = pb_.objective(trial.x, trial.grad);
                    const double value = merit(trial, lambda, mu);
                    if (std::isfinite(value) && value <= base + settings_.armijo * slope) {
                        accepted = true;
                        damping_ = ls == 0 ? std::max(damping_ * 0.3, 1e-12) : std::min(damping_ * 3.0, 1e8);
                        break;
                    }
                }
                if (!accepted) damping_ = std::min(std::max(damping_, 1e-8) * 100.0, 1e8);
            }
            if (accepted) {
                // Secant pair for the Lagrangian curvature, multipliers frozen at y.
                MatrixXd jac_new;
                if (!jacobian(trial, jac_new)) return pg;
                const VectorXd s = trial.x - it.x;
                const VectorXd yv = trial.grad - it.grad + (jac_new - jac).transpose() * y;
                update_hessian(s, yv);
                jac = std::move(jac_new);
                have_jac = true;
            }
            if (!accepted) return pg;
            std::swap(it, trial);
        }
    }

    // Damped BFGS update keeping the curvature model positive definite.
    void update_hessian(const VectorXd& s, const VectorXd& y) {
        const VectorXd bs = hessian_ * s;
        const double sbs = s.dot(bs);
        if (!(sbs > 0.0) || !std::isfinite(sbs)) return;
        const double sy = s.dot(y);
        const double theta = sy >= 0.2 * sbs ? 1.0 : 0.8 * sbs / (sbs - sy);
        const VectorXd r = theta * y + (1.0 - theta) * bs;
        const double sr = s.dot(r);
        if (!(sr > 0.0) || !r.allFinite()) return;
        hessian_ += r * r.transpose() / sr - bs * bs.transpose() / sbs;
    }

    void init_hessian(const VectorXd& x) {
        const VectorXd curv = pb_.curvature ? pb_.curvature(x) : VectorXd::Ones(pb_.n);
        floor_ = 1e-2 * std::max(1e-12, curv.maxCoeff());
        hessian_ = curv.cwiseMax(floor_).asDiagonal();
    }

    const NlpProblem& pb_;
    const NlpSettings& settings_;
    MatrixXd hessian_;
    double floor_ = 1.0;
    double damping_ = 1e-4;
    int inner_total_ = 0;
    int evaluations_ = 0;
    int jacobians_ = 0;
};

}  // namespace

const char* to_string(NlpStatus status) {
    switch (status) {
        case NlpStatus::converged: return "converged";
        case NlpStatus::infeasible: return "infeasible";
        case NlpStatus::max_iterations: return "max_iterations";
        case NlpStatus::evaluation_failed: return "evaluation_failed";
    }
    return "unknown";
}

Eigen::VectorXd project_box(const Eigen::VectorXd& x, const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) {
    return x.cwiseMax(lower).cwiseMin(upper);
}

NlpResult solve_nlp(const NlpProblem& problem, const Eigen::VectorXd& x0, const NlpSettings& settings) {
    const auto n = static_cast<Eigen::Index>(problem.n);
    if (problem.n <= 0 || problem.m < 0) throw ParameterError("nlp: dimensions must be positive");
    if (problem.lower.size() != n || problem.upper.size() != n || x0.size() != n)
        throw ParameterError("nlp: bound or start vector has the wrong size");
    if ((problem.lower.array() > problem.upper.array()).any()) throw ParameterError("nlp: lower bound above upper");
    if (!problem.objective || !problem.constraints) throw ParameterError("nlp: objective and constraints are required");
    if (problem.constraint_tolerance.size() != problem.m || (problem.constraint_tolerance.array() <= 0.0).any())
        throw ParameterError("nlp: constraint tolerances must be positive, one per constraint");
    if (!problem.jacobian && (problem.fd_step.size() != n || (problem.fd_step.array() <= 0.0).any()))
        throw ParameterError("nlp: finite-difference steps must be positive, one per variable");
    return Solver(problem, settings).run(x0);
}

}  // namespace hydroboost
