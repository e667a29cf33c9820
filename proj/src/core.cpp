#include "ccsl/error.hpp"
#include "ccsl/params.hpp"

#include <cmath>

namespace ccsl {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NonPositiveRc: return "NonPositiveRc";
    case ErrorKind::NegativeLambda: return "NegativeLambda";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::WhiteKernelNotPointwise: return "WhiteKernelNotPointwise";
    case ErrorKind::NonPositiveFrequency: return "NonPositiveFrequency";
    case ErrorKind::UnsupportedDispersion: return "UnsupportedDispersion";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::WashedOut: return "WashedOut";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::NotFound: return "NotFound";
    }
    return "Unknown";
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorKind::ParseError,
            "parse error at line " + std::to_string(line) + ", column " +
                std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

ValidationError::ValidationError(std::string field, std::string constraint)
    : Error(ErrorKind::ValidationError, field + ": " + constraint),
      field_(std::move(field)),
      constraint_(std::move(constraint)) {}

void validate_rc(double rc) {
    if (!(rc > 0.0) || !std::isfinite(rc))
        throw Error(ErrorKind::NonPositiveRc, "rc must be finite and > 0");
}

CollapseParams validate_params(const CollapseParams& p) {
    validate_rc(p.rc);
    if (!(p.lambda >= 0.0) || !std::isfinite(p.lambda))
        throw Error(ErrorKind::NegativeLambda, "lambda must be finite and >= 0");
    return p;
}

}  // namespace ccsl
