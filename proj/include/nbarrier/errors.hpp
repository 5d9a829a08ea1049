#pragma once

#include <stdexcept>
#include <string>

namespace nbarrier {

/// Base class for all domain errors raised by this library. The CLI maps
/// these to exit code 1; anything else is treated as a usage or internal
/// failure.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter container violates its positivity invariants.
class InvalidParams : public Error {
public:
    using Error::Error;
};

/// Regime classification is undefined on the boundary a1 = 1 or a2 = 1.
class AmbiguousRegime : public Error {
public:
    using Error::Error;
};

/// Operation requires the bistable regime (a1 > 1 and a2 > 1, or [BiS]).
class NotBistable : public Error {
public:
    using Error::Error;
};

/// The diffusion ratio d lies outside the admissibility window of the
/// tangent-line construction (discriminant <= 0).
class OutsideWindow : public Error {
public:
    using Error::Error;
};

/// Newton iteration stalled; carries the last residual norm reached.
class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, double last_residual)
        : Error(what), last_residual(last_residual) {}
    double last_residual;
};

/// A converged solution left the positive cone beyond the clipping tolerance.
class NonPositiveSolution : public Error {
public:
    using Error::Error;
};

/// Explicit time stepping stayed unstable after the maximum number of
/// step halvings.
class CFLViolation : public Error {
public:
    using Error::Error;
};

/// The tracked level set never settled into uniform translation.
class NotTraveling : public Error {
public:
    using Error::Error;
};

/// Sweep axis does not name a ThreeSpeciesParams field.
class UnknownAxis : public Error {
public:
    using Error::Error;
};

/// Plot inputs contradict each other (profile vs. parameters).
class InconsistentInputs : public Error {
public:
    using Error::Error;
};

/// Malformed configuration input (unknown key, wrong type, missing field).
/// Mapped to the usage exit code by the CLI, not the domain one.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace nbarrier
