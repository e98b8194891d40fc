#ifndef CRITNET_ERRORS_HPP
#define CRITNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace critnet {

// Argument outside the mathematical domain of an operation (e.g. atanh at |x| >= 1).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A parameter value that makes the operation degenerate (e.g. division by a zero weight).
struct DegenerateError : std::runtime_error {
    explicit DegenerateError(const std::string& msg) : std::runtime_error(msg) {}
};

// NaN or infinity appeared during numerical integration.
struct NonFiniteError : std::runtime_error {
    explicit NonFiniteError(const std::string& msg) : std::runtime_error(msg) {}
};

// No nullcline tangency exists in the searched parameter range.
struct NoTangencyError : std::runtime_error {
    explicit NoTangencyError(const std::string& msg) : std::runtime_error(msg) {}
};

// The requested bifurcation does not occur for these parameters.
struct NotApplicableError : std::runtime_error {
    explicit NotApplicableError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad or inconsistent scenario configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace critnet

#endif
