#pragma once

#include <stdexcept>
#include <string>

namespace pricelab {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of an operation (r <= 0, |x| >= 1, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Operation requested on a space it is not defined for (e.g. ball coordinates at k = 0).
class UnsupportedSpaceError : public Error {
public:
    explicit UnsupportedSpaceError(const std::string& what) : Error(what) {}
};

// Evaluation exactly on the boundary singularity of a kernel.
class SingularBoundaryError : public Error {
public:
    explicit SingularBoundaryError(const std::string& what) : Error(what) {}
};

// Quadrature refinement budget exhausted; carries the best estimate obtained.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double best_value, double err_est)
        : Error(what), best_value(best_value), err_est(err_est) {}
    double best_value;
    double err_est;
};

// A quantity violated an identity that holds exactly on these spaces (mu >= 1);
// signals broken numerics upstream.
class NumericalViolationError : public Error {
public:
    explicit NumericalViolationError(const std::string& what) : Error(what) {}
};

// Config/schema violation; `path` points at the offending field.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, std::string path_in)
        : Error(what + " (at " + path_in + ")"), path(std::move(path_in)) {}
    std::string path;
};

// Terminating hypergeometric series would divide by a vanishing Pochhammer factor.
class ParameterConflictError : public Error {
public:
    explicit ParameterConflictError(const std::string& what) : Error(what) {}
};

} // namespace pricelab
