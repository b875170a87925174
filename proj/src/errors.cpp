#include "jordanlab/errors.hpp"

namespace jordanlab {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NotInvertible: return "NotInvertible";
        case ErrorKind::FrameInvalid: return "FrameInvalid";
        case ErrorKind::KitMissing: return "KitMissing";
        case ErrorKind::NotAssociating: return "NotAssociating";
        case ErrorKind::NotBijective: return "NotBijective";
        case ErrorKind::LambdaNotInvertible: return "LambdaNotInvertible";
        case ErrorKind::ResidualExceeded: return "ResidualExceeded";
        case ErrorKind::JNotMultiplicative: return "JNotMultiplicative";
        case ErrorKind::RetriesExhausted: return "RetriesExhausted";
        case ErrorKind::CatalogEmpty: return "CatalogEmpty";
        case ErrorKind::UnknownAlgebra: return "UnknownAlgebra";
        case ErrorKind::UnknownSuite: return "UnknownSuite";
        case ErrorKind::SizeGuard: return "SizeGuard";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

JordanError::JordanError(ErrorKind kind, const std::string& message, double residual)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), residual_(residual) {}

}  // namespace jordanlab
