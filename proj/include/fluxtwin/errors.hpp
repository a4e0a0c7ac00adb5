#pragma once

#include <stdexcept>
#include <string>

namespace fluxtwin {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidMassError : Error { using Error::Error; };

// Evaluation requested inside the coincidence exclusion radius of a
// three-particle coincidence locus.
struct CoincidenceError : Error { using Error::Error; };

// Angle unwrapping or winding extraction could not be resolved at the
// maximum refinement depth (or produced a non-integer winding).
struct SamplingError : Error { using Error::Error; };

struct InvalidWordError : Error { using Error::Error; };
struct InvalidGeometryError : Error { using Error::Error; };
struct InvalidLoopError : Error { using Error::Error; };
struct NotALoopError : Error { using Error::Error; };
struct DegenerateTimeError : Error { using Error::Error; };

// Winding/mode truncation tail above the configured tolerance (strict mode).
struct TruncationError : Error { using Error::Error; };

struct InvalidOperatorError : Error { using Error::Error; };

// An analytic oracle (e.g. root bracketing) failed; never silently skipped.
struct OracleError : Error { using Error::Error; };

struct ConfigError : Error { using Error::Error; };

}  // namespace fluxtwin
