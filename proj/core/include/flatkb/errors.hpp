#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flatkb {

enum class ErrorCode {
    DivisionByIntervalContainingZero,
    NegativeArgument,
    AngleOutOfRange,
    NonOrthogonalDirection,
    InvariantViolation,
    DomainRayDegeneracy,
    NonconvexFace,
    InconsistentAtMeet,
    NonpositiveParameter,
    StripMismatch,
    NotCoaxial,
    BoundaryVertex,
    LowValence,
    MergeBreaksConvexity,
    OpenSurface,
    SeamMismatch,
    OrientationAmbiguous,
    InvalidComplex,
    ParseError,
    ParameterError,
};

std::string_view to_string(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace flatkb
