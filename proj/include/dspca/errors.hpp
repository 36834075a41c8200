#pragma once

#include <stdexcept>
#include <string>

namespace dspca {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A caller-supplied argument violates a precondition (bad dimension,
// non-finite entry, infeasible input, value out of range).
class InvalidInputError : public Error {
public:
    using Error::Error;
};

// A numerical routine failed (eigensolver did not converge, singular
// system where none should occur, non-finite intermediate).
class NumericalFailureError : public Error {
public:
    using Error::Error;
};

// The input is structurally valid but degenerate for the requested
// operation (zero matrix, constant sample row).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

} // namespace dspca
