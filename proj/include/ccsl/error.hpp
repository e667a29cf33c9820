#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ccsl {

enum class ErrorKind {
    NonPositiveRc,
    NegativeLambda,
    InvalidArgument,
    WhiteKernelNotPointwise,
    NonPositiveFrequency,
    UnsupportedDispersion,
    QuadratureNotConverged,
    WashedOut,
    EmptyInput,
    ParseError,
    ValidationError,
    NotFound,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

class ValidationError : public Error {
public:
    ValidationError(std::string field, std::string constraint);

    const std::string& field() const noexcept { return field_; }
    const std::string& constraint() const noexcept { return constraint_; }

private:
    std::string field_;
    std::string constraint_;
};

}  // namespace ccsl
