// Error types shared across the library.
//
// Conventions: precondition violations and malformed inputs throw
// InvalidArgument; configuration problems carry the offending field name;
// a trajectory hitting non-finite values throws BlowUpError with the time
// at which it was detected.

#pragma once

#include <stdexcept>
#include <string>

namespace cnls {

class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error("config field '" + field + "': " + what),
          field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class BlowUpError : public std::runtime_error {
public:
    explicit BlowUpError(double t)
        : std::runtime_error("non-finite value encountered at t = " + std::to_string(t)),
          t_(t) {}

    double time() const noexcept { return t_; }

private:
    double t_;
};

class CalibrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cnls
