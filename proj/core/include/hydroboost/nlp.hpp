#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>

namespace hydroboost {

/**
 * @brief Smooth objective, equality constraints c(x) = 0 and box bounds.
 *
 * The objective supplies its gradient and a diagonal curvature estimate
 * (exact for separable quadratics). `constraints` returns false when the
 * point cannot be evaluated; such points are rejected by the line search.
 * When `jacobian` is empty, forward differences with steps `fd_step` are
 * used (backward at the upper bound).
 */
struct NlpProblem {
    int n = 0;
    int m = 0;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& gradient)> objective;
    std::function<Eigen::VectorXd(const Eigen::VectorXd& x)> curvature;
    std::function<bool(const Eigen::VectorXd& x, Eigen::VectorXd& c)> constraints;
    std::function<bool(const Eigen::VectorXd& x, const Eigen::VectorXd& c, Eigen::MatrixXd& jacobian)> jacobian;
    Eigen::VectorXd fd_step;
    Eigen::VectorXd constraint_tolerance;
};

struct NlpSettings {
    double gradient_tolerance = 1e-3;  ///< projected-gradient infinity norm
    double penalty_growth = 10.0;
    double penalty_cap = 1e10;
    int max_outer = 30;
    int max_inner = 100;
    double armijo = 1e-4;
};

enum class NlpStatus { converged, infeasible, max_iterations, evaluation_failed };

const char* to_string(NlpStatus status);

struct NlpResult {
    Eigen::VectorXd x;
    Eigen::VectorXd c;
    Eigen::VectorXd multipliers;
    double objective = 0.0;
    double projected_gradient = 0.0;
    double penalty = 0.0;
    int outer_iterations = 0;
    int inner_iterations = 0;
    int constraint_evaluations = 0;
    NlpStatus status = NlpStatus::max_iterations;
    std::string message;
};

/// Projects x onto [lower, upper].
Eigen::VectorXd project_box(const Eigen::VectorXd& x, const Eigen::VectorXd& lower, const Eigen::VectorXd& upper);

/**
 * @brief Augmented-Lagrangian solver for box-constrained equality problems.
 *
 * Outer loop: first-order multiplier updates, penalty growth when the
 * constraint violation does not halve. Inner loop: projected two-metric
 * Newton-like steps on the augmented Lagrangian with the model
 * B + mu J^T J on the free variables, where B is a damped BFGS estimate
 * of the Lagrangian Hessian started from the objective curvature. Armijo
 * backtracking along the projection arc. The stopping test uses the
 * projected gradient scaled by the model diagonal. Deterministic.
 */
NlpResult solve_nlp(const NlpProblem& problem, const Eigen::VectorXd& x0, const NlpSettings& settings = {});

}  // namespace hydroboost
