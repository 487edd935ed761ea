#include "hydroboost/coefficients.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>

#include "hydroboost/error.hpp"

namespace hydroboost {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char ch : line) {
        if (ch == ',' || ch == ';' || ch == '\t' || ch == ' ' || ch == '\r') {
            if (!field.empty()) out.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(ch);
        }
    }
    if (!field.empty()) out.push_back(std::move(field));
    return out;
}

bool parse_double(const std::string& text, double& value) {
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc() && ptr == last && std::isfinite(value);
}

void check_axis(const std::vector<double>& axis, const char* name) {
    if (axis.empty()) throw ParameterError(std::string("coefficient table: empty ") + name + " axis");
    for (std::size_t i = 1; i < axis.size(); ++i)
        if (!(axis[i] > axis[i - 1]))
            throw ParameterError(std::string("coefficient table: ") + name + " axis not strictly increasing");
}

// Bracketing index and weight of the upper node; clamps outside the axis.
struct Bracket {
    std::size_t lo;
    std::size_t hi;
    double weight;
    bool clamped;
};

Bracket bracket(const std::vector<double>& axis, double x) {
    if (axis.size() == 1) return {0, 0, 0.0, x != axis.front()};
    if (x <= axis.front()) return {0, 0, 0.0, x < axis.front()};
    if (x >= axis.back()) return {axis.size() - 1, axis.size() - 1, 0.0, x > axis.back()};
    const auto it = std::upper_bound(axis.begin(), axis.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - axis.begin());
    const std::size_t lo = hi - 1;
    return {lo, hi, (x - axis[lo]) / (axis[hi] - axis[lo]), false};
}

}  // namespace

const std::array<std::string, 24>& coefficient_column_names() {
    static const std::array<std::string, 24> names = {
        "cx0", "cy0", "cz0", "cl0", "cm0", "cn0",
        "cxp", "cyp", "czp", "clp", "cmp", "cnp",
        "cxq", "cyq", "czq", "clq", "cmq", "cnq",
        "cxr", "cyr", "czr", "clr", "cmr", "cnr"};
    return names;
}

CoefficientTable::CoefficientTable(std::vector<double> alpha_deg, std::vector<double> beta_deg,
                                   std::vector<double> mach, std::vector<Row> values)
    : alpha_(std::move(alpha_deg)), beta_(std::move(beta_deg)), mach_(std::move(mach)), values_(std::move(values)) {
    check_axis(alpha_, "alpha_deg");
    check_axis(beta_, "beta_deg");
    check_axis(mach_, "mach");
    if (values_.size() != alpha_.size() * beta_.size() * mach_.size())
        throw ParameterError("coefficient table: value count does not match the grid size");
}

CoefficientTable CoefficientTable::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open coefficient table " + path.string());
    const std::string source = path.string();

    std::string line;
    int line_no = 0;
    std::vector<std::string> header;
    while (header.empty() && std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        header = split_fields(line);
    }
    if (header.empty()) throw ParseError(source, line_no, "", "missing header row");

    const auto& names = coefficient_column_names();
    int alpha_col = -1, beta_col = -1, mach_col = -1;
    std::vector<int> coef_col(header.size(), -1);
    for (std::size_t c = 0; c < header.size(); ++c) {
        std::string key = header[c];
        std::transform(key.begin(), key.end(), key.begin(), [](unsigned char ch) { return std::tolower(ch); });
        if (key == "alpha_deg") {
            alpha_col = static_cast<int>(c);
        } else if (key == "beta_deg") {
            beta_col = static_cast<int>(c);
        } else if (key == "mach") {
            mach_col = static_cast<int>(c);
        } else {
            const auto it = std::find(names.begin(), names.end(), key);
            if (it == names.end()) throw ParseError(source, line_no, header[c], "unknown column");
            coef_col[c] = static_cast<int>(it - names.begin());
        }
    }
    if (alpha_col < 0 || beta_col < 0 || mach_col < 0)
        throw ParseError(source, line_no, "", "header must name alpha_deg, beta_deg and mach");

    std::map<std::tuple<double, double, double>, Row> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() != header.size())
            throw ParseError(source, line_no, "", "expected " + std::to_string(header.size()) + " fields");
        std::vector<double> values(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c)
            if (!parse_double(fields[c], values[c])) throw ParseError(source, line_no, header[c], "not a number");
        Row row{};
        for (std::size_t c = 0; c < fields.size(); ++c)
            if (coef_col[c] >= 0) row[static_cast<std::size_t>(coef_col[c])] = values[c];
        const auto key = std::make_tuple(values[alpha_col], values[beta_col], values[mach_col]);
        if (!rows.emplace(key, row).second) throw ParseError(source, line_no, "", "duplicate grid point");
    }
    if (rows.empty()) throw ParseError(source, line_no, "", "table has no data rows");

    std::vector<double> alpha, beta, mach;
    for (const auto& [key, row] : rows) {
        alpha.push_back(std::get<0>(key));
        beta.push_back(std::get<1>(key));
        mach.push_back(std::get<2>(key));
    }
    for (auto* axis : {&alpha, &beta, &mach}) {
        std::sort(axis->begin(), axis->end());
        axis->erase(std::unique(axis->begin(), axis->end()), axis->end());
    }
    if (rows.size() != alpha.size() * beta.size() * mach.size())
        throw ParseError(source, 0, "", "grid is not a full Cartesian product of its axes");

    std::vector<Row> values;
    values.reserve(rows.size());
    for (double a : alpha)
        for (double b : beta)
            for (double m : mach) {
                const auto it = rows.find(std::make_tuple(a, b, m));
                if (it == rows.end()) throw ParseError(source, 0, "", "grid is not a full Cartesian product");
                values.push_back(it->second);
            }
    return CoefficientTable(std::move(alpha), std::move(beta), std::move(mach), std::move(values));
}

AeroCoefficients CoefficientTable::lookup(double alpha_deg, double beta_deg, double mach) const {
    const Bracket a = bracket(alpha_, alpha_deg);
    const Bracket b = bracket(beta_, beta_deg);
    const Bracket m = bracket(mach_, mach);

    Row acc{};
    for (int corner = 0; corner < 8; ++corner) {
        const bool ua = corner & 1, ub = corner & 2, um = corner & 4;
        const double w = (ua ? a.weight : 1.0 - a.weight) * (ub ? b.weight : 1.0 - b.weight) *
                         (um ? m.weight : 1.0 - m.weight);
        if (w == 0.0) continue;
        const Row& row = at(ua ? a.hi : a.lo, ub ? b.hi : b.lo, um ? m.hi : m.lo);
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += w * row[k];
    }

    AeroCoefficients out;
    for (std::size_t i = 0; i < 6; ++i) {
        out.c0[i] = acc[i];
        out.cp[i] = acc[6 + i];
        out.cq[i] = acc[12 + i];
        out.cr[i] = acc[18 + i];
    }
    out.clamped = a.clamped || b.clamped || m.clamped;
    return out;
}

AeroCoefficients CoefficientProvider::evaluate(double alpha, double beta, double mach) const {
    if (const auto* table = this->table()) return table->lookup(alpha / kDeg, beta / kDeg, mach);

    const auto& c = std::get<AnalyticCoefficients>(source_);
    AeroCoefficients out;
    out.c0[kX] = c.axial;
    out.c0[kY] = c.normal_slope * beta;
    out.c0[kZ] = c.normal_slope * alpha;
    out.c0[kPitch] = c.pitch_slope * alpha;
    out.c0[kYaw] = -c.pitch_slope * beta;
    out.cq[kPitch] = c.pitch_damping;
    out.cr[kYaw] = c.pitch_damping;
    return out;
}

const CoefficientTable* CoefficientProvider::table() const {
    const auto* ptr = std::get_if<std::shared_ptr<const CoefficientTable>>(&source_);
    return ptr ? ptr->get() : nullptr;
}

}  // namespace hydroboost
