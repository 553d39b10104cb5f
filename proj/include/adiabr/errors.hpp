// errors.hpp: Exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace adiabr {

// Argument outside the mathematical domain of a function (e.g. divergent occupation).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Invalid state or parameter object (non-Hermitian density matrix, negative rate, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Inconsistent or unknown configuration (unknown mode/scenario pairing, bad key).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Integrator failure; carries the time at which it happened.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double t)
        : std::runtime_error(what + " (t=" + std::to_string(t) + ")"), time_(t) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

// Fock-space truncation too small for the requested oscillator run.
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace adiabr
