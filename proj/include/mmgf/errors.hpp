#pragma once

#include <stdexcept>
#include <string>

namespace mmgf {

// Error taxonomy mirrored by the CLI exit codes:
//   input/config errors -> 2, capacity -> 3, convergence -> 4.

class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Zero degree (or zero norm) hit by a negative normalization exponent.
class SingularityError : public InputError {
public:
    explicit SingularityError(const std::string& msg) : InputError(msg) {}
};

// Elementwise power outside its real domain.
class DomainError : public InputError {
public:
    explicit DomainError(const std::string& msg) : InputError(msg) {}
};

class ConfigError : public InputError {
public:
    explicit ConfigError(const std::string& msg) : InputError(msg) {}
};

// Dense materialization larger than the configured cap.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, double residual)
        : std::runtime_error(msg), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace mmgf
