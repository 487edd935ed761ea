#pragma once

#include <string>
#include <vector>

namespace hydroboost {

struct OracleCheck {
    std::string name;
    double value = 0.0;
    double expected = 0.0;
    bool passed = false;
    std::string detail;
    double fit = 0.0;  ///< R^2 of the control against the analytic law (double integrator only)
};

/// Minimum-effort double integrator x'' = u from rest at 0 to rest at 1 in
/// 1 s. Analytic optimum u = 6 - 12t with J = 12.
OracleCheck double_integrator_oracle(int intervals = 50);

/// Observed RK4 order on x' = x over [0, 1] from step halving.
OracleCheck rk4_order_oracle();

/// Constant 1000 N over 0.4 s must cost exactly 4e5 N^2 s.
OracleCheck trapezoid_constant_oracle();

/// Ramp 0 to 1000 N over 1 s: trapezoid error against the h^2/12 (b-a) max|f''| bound.
OracleCheck trapezoid_ramp_oracle();

std::vector<OracleCheck> run_oracles();

}  // namespace hydroboost
