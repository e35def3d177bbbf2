#pragma once

#include <stdexcept>
#include <string>

namespace platoon {

// Error taxonomy shared by all modules. The CLI maps these onto exit codes:
// ConfigError -> 2, everything else -> 1 (bound violations are reported
// separately and exit 3).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user-supplied values: malformed config, invalid topology, gamma <= 0.
struct ConfigError : Error {
    using Error::Error;
};

// Shape mismatches between matrices/vectors.
struct DimensionError : Error {
    using Error::Error;
};

// Non-finite or otherwise unusable runtime inputs.
struct InputError : Error {
    using Error::Error;
};

// Solver non-convergence, residuals above tolerance, singular systems.
struct NumericalError : Error {
    using Error::Error;
};

// No stabilizing Riccati solution / gain design failure.
struct SynthesisError : Error {
    using Error::Error;
};

// Controller invoked with data inconsistent with the communication topology.
struct ProtocolError : Error {
    using Error::Error;
};

// Simulation produced a non-finite state; message names vehicle and time.
struct DivergenceError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace platoon
