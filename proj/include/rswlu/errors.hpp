#pragma once

#include <stdexcept>
#include <string>

namespace rswlu {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mesh refinement level exceeds the configured maximum.
struct ResourceExhaustion : Error {
    using Error::Error;
};

/// Dual-averaged or edge-averaged water depth fell below the positivity floor.
struct DegenerateDepth : Error {
    using Error::Error;
};

/// Brownian increment length does not match the number of noise modes.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// A prognostic field left the configured physical envelope or became non-finite.
struct BlowUp : Error {
    int step_index = -1;
    BlowUp(const std::string& what, int step) : Error(what), step_index(step) {}
};

/// Invalid noise configuration or malformed basis file.
struct ConfigError : Error {
    using Error::Error;
};

/// Balance-integral quadrature failed to reach the requested tolerance.
struct QuadratureFailure : Error {
    using Error::Error;
};

/// Unknown experiment preset name.
struct UnknownPreset : Error {
    using Error::Error;
};

/// Config file could not be parsed (carries a line location in the message).
struct ParseError : Error {
    using Error::Error;
};

/// Config parsed but violates invariants; message lists all violations.
struct ValidationError : Error {
    using Error::Error;
};

} // namespace rswlu
