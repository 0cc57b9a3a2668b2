#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace triperi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or contract violation: unknown point, coincident triple
/// points, missing enumeration window, division by zero, non-finite float.
class DomainError : public Error {
public:
    using Error::Error;
};

/// alpha = 0 passed where delta = eps/(4*alpha) must be formed. Kept separate
/// from DomainError so callers can tell it apart from ordinary bad input.
class ZeroAlphaError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Exact arithmetic exceeded the checked width, or an enumeration window is
/// larger than the exact backend supports. Never silent wraparound.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Malformed FMS/FMAP input. Carries 1-based line and column of the offending
/// token (or of end-of-input for truncation errors).
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(message + " (line " + std::to_string(line) + ", column " +
                std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace triperi
