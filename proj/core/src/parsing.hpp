#pragma once

// Helpers shared by the scenario and sweep readers.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hydroboost/error.hpp"
#include "hydroboost/scenario.hpp"

namespace hydroboost::detail {

constexpr double kDeg = 3.14159265358979323846 / 180.0;

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Parser {
public:
    Parser(std::string source, std::filesystem::path base) : source_(std::move(source)), base_(std::move(base)) {}

    [[noreturn]] void fail(const KeyValueEntry& e, const std::string& what) const {
        throw ParseError(source_, e.line, qualified(e), what);
    }

    static std::string qualified(const KeyValueEntry& e) {
        return e.section.empty() ? e.key : e.section + "." + e.key;
    }

    double number(const KeyValueEntry& e) const { return number(e, e.value); }

    double number(const KeyValueEntry& e, const std::string& text) const {
        double v = 0.0;
        const char* first = text.data();
        const char* last = first + text.size();
        if (!text.empty() && *first == '+') ++first;
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last || text.empty()) fail(e, "expected a number, got '" + text + "'");
        if (!std::isfinite(v)) fail(e, "value must be finite");
        return v;
    }

    double positive(const KeyValueEntry& e) const {
        const double v = number(e);
        if (!(v > 0.0)) fail(e, "must be positive");
        return v;
    }

    int count(const KeyValueEntry& e) const {
        const double v = number(e);
        if (v < 1.0 || v != std::floor(v) || v > 1e7) fail(e, "expected a positive integer");
        return static_cast<int>(v);
    }

    std::pair<double, double> range(const KeyValueEntry& e) const {
        const auto comma = e.value.find(',');
        if (comma == std::string::npos) fail(e, "expected 'lower, upper'");
        const double lo = number(e, trim(std::string_view(e.value).substr(0, comma)));
        const double hi = number(e, trim(std::string_view(e.value).substr(comma + 1)));
        if (lo > hi) fail(e, "lower bound exceeds upper bound");
        return {lo, hi};
    }

    std::vector<double> list(const KeyValueEntry& e) const {
        std::vector<double> out;
        std::stringstream ss(e.value);
        for (std::string item; std::getline(ss, item, ',');) out.push_back(number(e, trim(item)));
        if (out.empty()) fail(e, "expected a comma-separated list");
        return out;
    }

    std::filesystem::path file(const KeyValueEntry& e) const {
        if (e.value.empty()) fail(e, "expected a file path");
        std::filesystem::path p(e.value);
        if (p.is_relative()) p = base_ / p;
        if (!std::filesystem::is_regular_file(p)) fail(e, "file not found: " + p.string());
        return p;
    }

    const std::string& source() const { return source_; }

private:
    std::string source_;
    std::filesystem::path base_;
};

}  // namespace hydroboost::detail
