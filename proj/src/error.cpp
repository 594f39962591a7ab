#include "gsplab/error.hpp"

namespace gsplab {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::DomainExceeded: return "DomainExceeded";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorCode::DegenerateWeight: return "DegenerateWeight";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::NonPositiveExponent: return "NonPositiveExponent";
    case ErrorCode::ThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorCode::NegativeVariance: return "NegativeVariance";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Inadmissible: return "Inadmissible";
    }
    return "Unknown";
}

}  // namespace gsplab
