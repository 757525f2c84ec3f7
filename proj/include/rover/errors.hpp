// Exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace rover {

/// A simulation coordinate became NaN or infinite; the run aborts.
struct NonFiniteState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A configuration value was rejected; the message names the offending key.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Config file could not be parsed; the message carries the line number.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Static force balance has no solution within the strut travel range.
struct NoEquilibrium : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scenario geometry or speed outside the supported range.
struct InvalidSpec : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyTrace : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A report was requested over a sweep grid with missing cells.
struct IncompleteGrid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace rover
