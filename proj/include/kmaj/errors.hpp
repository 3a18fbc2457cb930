#pragma once

#include <stdexcept>
#include <string>

namespace kmaj {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an operation needs exact arithmetic but the inputs (or a
// parameter such as a non-integer exponent) force floating point, or vice
// versa.
struct ArithmeticModeMismatch : Error {
    using Error::Error;
};

// step_power on a cell with a negative value.
struct NegativeCell : Error {
    using Error::Error;
};

// A documented precondition of an operation does not hold for the inputs.
struct PremiseViolated : Error {
    using Error::Error;
};

// A machine-checked internal invariant failed.  This signals a bug in the
// implementation (or a genuinely impossible input), never a soft error.
struct InvariantViolation : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// An iterative evaluation did not reach its certificate at the requested
// tolerance.
struct NoConvergence : Error {
    using Error::Error;
};

} // namespace kmaj
