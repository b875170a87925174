#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jordanlab {

enum class ErrorKind {
    InvalidArgument,
    DimensionMismatch,
    NotInvertible,
    FrameInvalid,
    KitMissing,
    NotAssociating,
    NotBijective,
    LambdaNotInvertible,
    ResidualExceeded,
    JNotMultiplicative,
    RetriesExhausted,
    CatalogEmpty,
    UnknownAlgebra,
    UnknownSuite,
    SizeGuard,
    ParseError,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

/// Error raised by every library operation. Carries the residual that
/// triggered it when one was measured (NaN otherwise).
class JordanError : public std::runtime_error {
public:
    JordanError(ErrorKind kind, const std::string& message,
                double residual = std::numeric_limits<double>::quiet_NaN());

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] double residual() const noexcept { return residual_; }

private:
    ErrorKind kind_;
    double residual_;
};

}  // namespace jordanlab
