#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qslit {

// Root of all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// Propagator evaluated at coinciding times.
class SingularTimeError : public Error {
public:
    using Error::Error;
};

// Propagator requested backwards in time where a causal value is required.
class CausalityError : public Error {
public:
    using Error::Error;
};

class GeometryError : public Error {
public:
    using Error::Error;
};

// Stationary point is degenerate (second derivative of the phase not positive).
class DegeneracyError : public Error {
public:
    using Error::Error;
};

class NormalizationError : public Error {
public:
    using Error::Error;
};

class InsufficientFeaturesError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

// Quadrature or extrapolation did not reach the requested tolerance.
// The best estimate and its error bound are kept for the caller.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::complex<double> estimate, double error)
        : Error(what), estimate_(estimate), error_(error) {}

    std::complex<double> estimate() const { return estimate_; }
    double error_bound() const { return error_; }

private:
    std::complex<double> estimate_;
    double error_;
};

}  // namespace qslit
