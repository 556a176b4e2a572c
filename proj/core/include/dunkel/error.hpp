#pragma once

#include <stdexcept>
#include <string>

namespace dunkel {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter lies outside the range an operation accepts.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Two series that must share start, step and length do not.
class AlignmentError : public Error {
public:
    using Error::Error;
};

/// A referenced series or entry does not exist.
class LookupError : public Error {
public:
    using Error::Error;
};

/// Malformed or out-of-range input data. Carries the 1-based line when known.
class InputError : public Error {
public:
    InputError(const std::string& message, std::size_t line = 0);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// File-system failure, annotated with the offending path.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace dunkel
