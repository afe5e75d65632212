#pragma once

#include <stdexcept>
#include <string>

namespace taged {

/// Base of every error raised by the library. The CLI maps subclasses to
/// exit codes, so new failure modes should derive from one of these.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class InvalidPosition : public Error {
    using Error::Error;
};

class AlienSymbol : public Error {
    using Error::Error;
};

class UnknownVertex : public Error {
    using Error::Error;
};

class AlphabetMismatch : public Error {
    using Error::Error;
};

class DomainError : public Error {
    using Error::Error;
};

class PreconditionViolated : public Error {
    using Error::Error;
};

/// A configured cap was exceeded. Never a silent truncation.
class ResourceLimit : public Error {
    using Error::Error;
};

}  // namespace taged
