#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ghnabla {

enum class ErrorKind {
    NotInTimeScale,
    EmptySide,
    OrderViolation,
    GridMismatch,
    AlphaOutOfRange,
    NotInDomain,
    LimitDisagreement,
    GhNonexistent,
    EndpointDerivativeMissing,
    SignHypothesisFailed,
    LengthDirectionUndetermined,
    SyntaxError,
    ValidationError,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// callers (the CLI in particular) can map it onto a stable exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Positioned parse failure. Line and column are 1-based.
class SyntaxError : public Error {
public:
    SyntaxError(int line, int column, std::string expected, const std::string& found)
        : Error(ErrorKind::SyntaxError,
                std::to_string(line) + ":" + std::to_string(column) + ": expected " + expected +
                    ", found " + found),
          line_(line), column_(column), expected_(std::move(expected)) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    int line_;
    int column_;
    std::string expected_;
};

}  // namespace ghnabla
