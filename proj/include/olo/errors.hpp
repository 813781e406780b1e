#pragma once

#include <stdexcept>
#include <string>

namespace olo {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: dimension mismatch, nonpositive scale, bad config value.
class ArgumentError : public Error
{
public:
    using Error::Error;
};

/// Input outside the mathematical domain of the operation (e.g. dual map of 0).
class DomainError : public Error
{
public:
    using Error::Error;
};

/// The operation is not defined for the requested norm kind or parameter.
class UnsupportedError : public Error
{
public:
    using Error::Error;
};

/// A learner received a gradient violating its stated bound.
class PreconditionError : public Error
{
public:
    using Error::Error;
};

/// Iterative solver failure or numerical breakdown.
class NumericError : public Error
{
public:
    NumericError(const std::string& what, double residual)
        : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual)
    {
    }

    double residual() const { return residual_; }

private:
    double residual_;
};

} // namespace olo
