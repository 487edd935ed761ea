#pragma once

#include <array>
#include <filesystem>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace hydroboost {

/// Index of a force/moment channel inside coefficient arrays.
enum Channel : int { kX = 0, kY = 1, kZ = 2, kRoll = 3, kPitch = 4, kYaw = 5 };

/**
 * @brief Coefficients at one flight condition.
 *
 * C_i = c0[i] + cp[i] p d/2V + cq[i] q d/2V + cr[i] r d/2V for the six
 * channels x, y, z, l, m, n. `clamped` is set when the query fell outside
 * a tabulated grid and was clamped to its boundary.
 */
struct AeroCoefficients {
    std::array<double, 6> c0{};
    std::array<double, 6> cp{};
    std::array<double, 6> cq{};
    std::array<double, 6> cr{};
    bool clamped = false;
};

/**
 * @brief Placeholder slender-body coefficient set used when no table is given.
 *
 * Symmetric about both planes: C_z0 = normal_slope * alpha,
 * C_m0 = pitch_slope * alpha, C_y0 = normal_slope * beta,
 * C_n0 = -pitch_slope * beta, C_mq = C_nr = pitch_damping, C_x0 = axial.
 */
struct AnalyticCoefficients {
    double axial = -0.10;          ///< C_x0
    double normal_slope = -10.0;   ///< C_z_alpha [1/rad]
    double pitch_slope = -22.0;    ///< C_m_alpha [1/rad]
    double pitch_damping = -100.0; ///< C_mq [1/rad]
};

/// Names of the 24 coefficient columns in table order (cx0..cn0, cxp..cnp, cxq..cnq, cxr..cnr).
const std::array<std::string, 24>& coefficient_column_names();

/**
 * @brief Coefficients on a full Cartesian grid of (alpha_deg, beta_deg, mach).
 *
 * Each axis must be strictly increasing. Values are stored with mach varying
 * fastest, then beta, then alpha. Lookup is trilinear; queries outside the
 * grid clamp to the boundary and report `clamped`.
 */
class CoefficientTable {
public:
    using Row = std::array<double, 24>;

    CoefficientTable(std::vector<double> alpha_deg, std::vector<double> beta_deg, std::vector<double> mach,
                     std::vector<Row> values);

    /// Reads a delimited text table (comma, semicolon, tab or space separated)
    /// with a header naming alpha_deg, beta_deg, mach and any of the 24
    /// coefficient columns; missing coefficient columns are zero.
    static CoefficientTable from_file(const std::filesystem::path& path);

    AeroCoefficients lookup(double alpha_deg, double beta_deg, double mach) const;

    const std::vector<double>& alpha_deg() const { return alpha_; }
    const std::vector<double>& beta_deg() const { return beta_; }
    const std::vector<double>& mach() const { return mach_; }

private:
    const Row& at(std::size_t ia, std::size_t ib, std::size_t im) const {
        return values_[(ia * beta_.size() + ib) * mach_.size() + im];
    }

    std::vector<double> alpha_;
    std::vector<double> beta_;
    std::vector<double> mach_;
    std::vector<Row> values_;
};

/// Immutable source of aero/hydrodynamic coefficients.
class CoefficientProvider {
public:
    enum class Mode { tabulated, analytic_fallback };

    CoefficientProvider() : source_(AnalyticCoefficients{}) {}
    explicit CoefficientProvider(AnalyticCoefficients fallback) : source_(fallback) {}
    explicit CoefficientProvider(CoefficientTable table)
        : source_(std::make_shared<const CoefficientTable>(std::move(table))) {}
    explicit CoefficientProvider(std::shared_ptr<const CoefficientTable> table) : source_(std::move(table)) {}

    Mode mode() const { return source_.index() == 0 ? Mode::analytic_fallback : Mode::tabulated; }

    /// Angles in radians.
    AeroCoefficients evaluate(double alpha, double beta, double mach) const;

    /// Only meaningful in analytic_fallback mode.
    const AnalyticCoefficients* analytic() const { return std::get_if<AnalyticCoefficients>(&source_); }
    const CoefficientTable* table() const;

private:
    std::variant<AnalyticCoefficients, std::shared_ptr<const CoefficientTable>> source_;
};

}  // namespace hydroboost
