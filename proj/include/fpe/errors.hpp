#pragma once

#include <stdexcept>
#include <string>

namespace fpe {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- profile / symbolic algebra ---

struct InvalidInputError : Error {
    using Error::Error;
};

/// Rational profile evaluated at a zero of its denominator.
struct PoleError : Error {
    double z;
    PoleError(double z_, const std::string& msg) : Error(msg), z(z_) {}
};

struct UnsupportedOperationError : Error {
    using Error::Error;
};

struct DegenerateDiffusionError : Error {
    using Error::Error;
};

// --- scaling ---

struct InconsistentScalingError : Error {
    using Error::Error;
};

struct DegenerateTimeScalingError : Error {
    using Error::Error;
};

struct InvalidTimeError : Error {
    using Error::Error;
};

// --- reduction ---

struct InteriorDegeneracyError : Error {
    using Error::Error;
};

// --- solution families ---

struct UnnormalizableError : Error {
    using Error::Error;
};

struct DegenerateFamilyError : Error {
    using Error::Error;
};

struct UnsupportedStatisticError : Error {
    using Error::Error;
};

struct UndefinedCrossingError : Error {
    using Error::Error;
};

struct UnsupportedTransformError : Error {
    using Error::Error;
};

// --- oracle ---

struct IllPosedDiffusionError : Error {
    using Error::Error;
};

struct ResolutionError : Error {
    using Error::Error;
};

struct IncompatibleGridsError : Error {
    using Error::Error;
};

// --- qes ---

struct InvalidParameterError : Error {
    using Error::Error;
};

// --- cli ---

/// Configuration validation failure; message starts with the offending field path.
struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace fpe
