#pragma once

#include <stdexcept>
#include <string>

namespace mfobs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A matrix passed to vee() is not skew-symmetric within tolerance.
class NotSkew : public Error {
public:
    using Error::Error;
};

/// A wrapped angle is outside (-pi, pi].
class OutOfRange : public Error {
public:
    using Error::Error;
};

/// The observer matrix lies in the degenerate set, so the nearest rotation
/// is not unique and no filtered angle exists at this instant.
class DegenerateProjection : public Error {
public:
    using Error::Error;
};

/// Invariant violation on user-supplied data. `field()` names the offending
/// field using the config document path (e.g. "integrator.dt").
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A simulation produced NaN/Inf. `time()` is the start of the failing step.
class NonFinite : public Error {
public:
    NonFinite(double t, const std::string& what)
        : Error("non-finite state at t=" + std::to_string(t) + ": " + what), time_(t) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

class UnknownPreset : public Error {
public:
    using Error::Error;
};

class UnknownParameter : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace mfobs
