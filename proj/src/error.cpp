#include "ghnabla/error.hpp"

namespace ghnabla {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotInTimeScale: return "NotInTimeScale";
        case ErrorKind::EmptySide: return "EmptySide";
        case ErrorKind::OrderViolation: return "OrderViolation";
        case ErrorKind::GridMismatch: return "GridMismatch";
        case ErrorKind::AlphaOutOfRange: return "AlphaOutOfRange";
        case ErrorKind::NotInDomain: return "NotInDomain";
        case ErrorKind::LimitDisagreement: return "LimitDisagreement";
        case ErrorKind::GhNonexistent: return "GhNonexistent";
        case ErrorKind::EndpointDerivativeMissing: return "EndpointDerivativeMissing";
        case ErrorKind::SignHypothesisFailed: return "SignHypothesisFailed";
        case ErrorKind::LengthDirectionUndetermined: return "LengthDirectionUndetermined";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::ValidationError: return "ValidationError";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

}  // namespace ghnabla
