#pragma once

#include <stdexcept>
#include <string>

namespace cmmod {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed formula text or JSON payload.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line = 0, int column = 0)
        : Error(line > 0 ? msg + " at line " + std::to_string(line) + ", column " +
                               std::to_string(column)
                         : msg),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// A configured bound (level, arity, discriminant, precision) was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

// Well-formed input that violates a semantic precondition.
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace cmmod
