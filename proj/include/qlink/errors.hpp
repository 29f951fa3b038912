#pragma once

#include <stdexcept>
#include <string>

namespace qlink {

/// Base class for all qlink errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A requested space-ground link does not exist: the satellite sits at or
/// below the local horizon of the ground point.
struct BelowHorizon : Error {
    using Error::Error;
};

/// Elevation angle outside (0, pi/2]; the csc-law atmosphere is undefined.
struct InvalidElevation : Error {
    using Error::Error;
};

/// A rate or time formula diverges because a required factor is zero.
struct DegenerateInput : Error {
    using Error::Error;
};

/// Argument outside the mathematical domain of a function.
struct DomainError : Error {
    using Error::Error;
};

/// Scenario text could not be parsed (malformed line, bad number).
struct ParseError : Error {
    using Error::Error;
};

/// Scenario parsed but a field violates its invariant, or a key is unknown.
struct ValidationError : Error {
    using Error::Error;
};

/// reproduce() was asked for a figure id that has no bundled preset.
struct UnknownFigure : Error {
    using Error::Error;
};

}  // namespace qlink
