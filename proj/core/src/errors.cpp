#include "flatkb/errors.hpp"

namespace flatkb {

std::string_view to_string(ErrorCode c)
{
    switch (c) {
    case ErrorCode::DivisionByIntervalContainingZero: return "DIVISION_BY_INTERVAL_CONTAINING_ZERO";
    case ErrorCode::NegativeArgument: return "NEGATIVE_ARGUMENT";
    case ErrorCode::AngleOutOfRange: return "ANGLE_OUT_OF_RANGE";
    case ErrorCode::NonOrthogonalDirection: return "NON_ORTHOGONAL_DIRECTION";
    case ErrorCode::InvariantViolation: return "INVARIANT_VIOLATION";
    case ErrorCode::DomainRayDegeneracy: return "DOMAIN_RAY_DEGENERACY";
    case ErrorCode::NonconvexFace: return "NONCONVEX_FACE";
    case ErrorCode::InconsistentAtMeet: return "INCONSISTENT_AT_MEET";
    case ErrorCode::NonpositiveParameter: return "NONPOSITIVE_PARAMETER";
    case ErrorCode::StripMismatch: return "STRIP_MISMATCH";
    case ErrorCode::NotCoaxial: return "NOT_COAXIAL";
    case ErrorCode::BoundaryVertex: return "BOUNDARY_VERTEX";
    case ErrorCode::LowValence: return "LOW_VALENCE";
    case ErrorCode::MergeBreaksConvexity: return "MERGE_BREAKS_CONVEXITY";
    case ErrorCode::OpenSurface: return "OPEN_SURFACE";
    case ErrorCode::SeamMismatch: return "SEAM_MISMATCH";
    case ErrorCode::OrientationAmbiguous: return "ORIENTATION_AMBIGUOUS";
    case ErrorCode::InvalidComplex: return "INVALID_COMPLEX";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::ParameterError: return "PARAMETER_ERROR";
    }
    return "UNKNOWN";
}

} // namespace flatkb
