#pragma once

#include <stdexcept>
#include <string>

namespace edsval {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain arguments (non-prime p, ell = 0, bad JSON, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

class PrimeMismatch : public Error {
public:
    using Error::Error;
};

class NoSquareRoot : public Error {
public:
    using Error::Error;
};

/// A truncated p-adic computation cannot certify its result.
class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

/// A brute-force search exceeded its configured cap.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

class SingularModel : public Error {
public:
    using Error::Error;
};

class PointNotOnCurve : public Error {
public:
    using Error::Error;
};

class NotMinimal : public Error {
public:
    using Error::Error;
};

class NonIntegralModel : public Error {
public:
    using Error::Error;
};

/// [n]P is the identity, so it has no affine coordinates.
class TorsionMultiple : public Error {
public:
    using Error::Error;
};

class ConstructionError : public Error {
public:
    using Error::Error;
};

class FitFailure : public Error {
public:
    using Error::Error;
};

class InternalInconsistency : public Error {
public:
    using Error::Error;
};

class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(const std::string& what, double last_estimate)
        : Error(what), last_estimate_(last_estimate) {}

    double last_estimate() const noexcept { return last_estimate_; }

private:
    double last_estimate_;
};

}  // namespace edsval
