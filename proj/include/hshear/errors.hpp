#pragma once

#include <stdexcept>
#include <string>

namespace hshear {

enum class ErrorKind {
    domain,
    convergence,
    invalid_dilatation,
    unsupported_parameter,
    unsupported_domain,
};

inline const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::invalid_dilatation: return "invalid-dilatation";
    case ErrorKind::unsupported_parameter: return "unsupported-parameter";
    case ErrorKind::unsupported_domain: return "unsupported-domain";
    }
    return "unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI, the fallback dispatchers) can branch without string
/// matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what) : Error(ErrorKind::convergence, what) {}
};

class InvalidDilatationError : public Error {
public:
    explicit InvalidDilatationError(const std::string& what)
        : Error(ErrorKind::invalid_dilatation, what)
    {
    }
};

class UnsupportedParameterError : public Error {
public:
    explicit UnsupportedParameterError(const std::string& what)
        : Error(ErrorKind::unsupported_parameter, what)
    {
    }
};

class UnsupportedDomainError : public Error {
public:
    explicit UnsupportedDomainError(const std::string& what)
        : Error(ErrorKind::unsupported_domain, what)
    {
    }
};

} // namespace hshear
