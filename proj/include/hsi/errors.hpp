#pragma once

#include <stdexcept>
#include <string>

namespace hsi {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument at or within the guard radius of a pole of Gamma.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An adaptive quadrature or series failed to reach its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Grid too coarse for the requested operation.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// The fitted exponential tail of sampled data does not decay.
class TailModelError : public Error {
public:
    using Error::Error;
};

/// Two independent Laplace inversion methods disagree.
class MethodDisagreement : public Error {
public:
    using Error::Error;
};

/// Picard iteration exhausted its iteration budget.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// A measured iterate norm exceeded the analytic spectral-radius bound.
class BoundViolation : public Error {
public:
    using Error::Error;
};

/// Log-log regression residual too large to support a power law.
class FitError : public Error {
public:
    using Error::Error;
};

/// The paradox pipeline could not establish the small-time law.
class ParadoxInconclusive : public Error {
public:
    using Error::Error;
};

/// Invalid run configuration; the message names the offending field.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace hsi
