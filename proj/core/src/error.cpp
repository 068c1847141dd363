#include "catdiv/error.hpp"

namespace catdiv {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidK: return "InvalidK";
        case ErrorCode::InvalidMeasure: return "InvalidMeasure";
        case ErrorCode::InvalidFraction: return "InvalidFraction";
        case ErrorCode::InvalidParameter: return "InvalidParameter";
        case ErrorCode::DivergentIntegral: return "DivergentIntegral";
        case ErrorCode::QuadratureFailure: return "QuadratureFailure";
        case ErrorCode::NoRoot: return "NoRoot";
        case ErrorCode::BarrierConditionViolated: return "BarrierConditionViolated";
        case ErrorCode::DegenerateLog: return "DegenerateLog";
        case ErrorCode::SignViolation: return "SignViolation";
        case ErrorCode::NegativeSurplus: return "NegativeSurplus";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(message) {}

}  // namespace catdiv
