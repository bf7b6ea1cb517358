#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scrolls {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. `line` and `column` are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(format(what, line, column)), reason_(what), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    /// Message without the position prefix.
    const std::string& reason() const noexcept { return reason_; }

private:
    static std::string format(const std::string& what, std::size_t line, std::size_t column) {
        std::string out;
        if (line > 0) out += "line " + std::to_string(line) + ", ";
        if (column > 0) out += "column " + std::to_string(column) + ": ";
        return out + what;
    }

    std::string reason_;
    std::size_t line_;
    std::size_t column_;
};

/// A constructor invariant does not hold (bad shape, rank, unknown variable...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// An operation's precondition fails for a well-formed input (non-stationary, k = N, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// No generic sample point was found after the configured number of retries,
/// or a supplied point is special (rank drop).
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Degree or coefficient-size cap exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// A post-condition or cross-check failed.
class VerificationError : public Error {
public:
    using Error::Error;
};

} // namespace scrolls
