#pragma once

#include <stdexcept>
#include <string>

namespace hydroboost {

/// Base class for every error raised by hydroboost.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the band an operation is defined on (e.g. ISA altitude).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid or degenerate physical / numerical parameters.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Evaluation at a singular point (zero speed under rate normalization,
/// lateral motion at the Euler-angle singularity).
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Failure while integrating a trajectory; carries the simulation time.
class PropagationError : public Error {
public:
    PropagationError(double time, const std::string& what)
        : Error("at t = " + std::to_string(time) + " s: " + what), time_(time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Scenario / sweep / table file that could not be parsed or validated.
class ParseError : public Error {
public:
    ParseError(const std::string& source, int line, const std::string& field, const std::string& what)
        : Error(format(source, line, field, what)), line_(line), field_(field) {}

    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    static std::string format(const std::string& source, int line, const std::string& field,
                              const std::string& what) {
        std::string out = source;
        if (line > 0) out += ":" + std::to_string(line);
        if (!field.empty()) out += ": " + field;
        return out + ": " + what;
    }

    int line_;
    std::string field_;
};

/// Launch and boost result sets that do not line up angle-for-angle.
class AlignmentError : public Error {
public:
    using Error::Error;
};

/// File-system failure; the message names the path.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace hydroboost
