#pragma once

#include <stdexcept>
#include <string>

namespace qsid {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exponent is not a multiple of 1/D on the requested substrate.
struct SubstrateError : Error {
    using Error::Error;
};

// Coefficient requested beyond the tracked order.
struct TruncationError : Error {
    using Error::Error;
};

struct NotInvertibleError : Error {
    using Error::Error;
};

// A product contains a factor (1 - q^0).
struct VanishingProductError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

// Enumeration could not be bounded, or the pruning certificate failed.
struct PruningError : Error {
    using Error::Error;
};

struct EvaluationError : Error {
    using Error::Error;
};

} // namespace qsid
