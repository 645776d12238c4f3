#pragma once

#include <stdexcept>
#include <string>

namespace sentiscope {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad or missing input: malformed files, contract violations by the caller.
// The CLI maps this family to exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

// Input that parses but breaks a domain invariant.
class ValidationError : public InputError {
public:
    using InputError::InputError;
};

// Numeric argument outside its declared interval.
class RangeError : public InputError {
public:
    using InputError::InputError;
};

// A computation could not produce a result from valid input
// (e.g. too little overlap between series). CLI exit code 1.
class ComputationError : public Error {
public:
    using Error::Error;
};

// Pearson correlation is not defined for a zero-variance series.
class UndefinedCorrelation : public ComputationError {
public:
    using ComputationError::ComputationError;
};

// Error located at a line of an input file.
inline std::string at_line(const std::string& source, std::size_t line, const std::string& what) {
    return source + ":" + std::to_string(line) + ": " + what;
}

}  // namespace sentiscope
