#pragma once

#include <stdexcept>
#include <string>

namespace vnfq {

/// A parameter failed validation. `field` names the first offending key.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Config file could not be parsed (bad key, bad value, missing key, ...).
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// A linear solve did not meet its residual tolerance.
class SolverError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Q6 offered load is at or above its service rate; the infinite queue has
/// no steady state.
class UnstableError : public std::runtime_error {
public:
    UnstableError(double lambda6, double mu6)
        : std::runtime_error("Q6 unstable: lambda6 = " + std::to_string(lambda6) +
                             " >= mu6 = " + std::to_string(mu6)),
          lambda6_(lambda6), mu6_(mu6) {}
    double lambda6() const noexcept { return lambda6_; }
    double mu6() const noexcept { return mu6_; }

private:
    double lambda6_;
    double mu6_;
};

} // namespace vnfq
