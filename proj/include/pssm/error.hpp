#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pssm {

// Base class for all engine errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
    using Error::Error;
};

struct DegenerateSubstitution : Error {
    using Error::Error;
};

struct VarMismatch : Error {
    using Error::Error;
};

struct UnboundedSupport : Error {
    using Error::Error;
};

// Parse errors carry a 1-based source location.
struct ParseError : Error {
    ParseError(std::string msg, std::size_t line, std::size_t column)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line(line),
          column(column) {}
    std::size_t line;
    std::size_t column;
};

struct UnknownFunction : Error {
    using Error::Error;
};

struct NotReducible : Error {
    using Error::Error;
};

struct UnreliableMatch : Error {
    using Error::Error;
};

struct BranchLimit : Error {
    using Error::Error;
};

struct Inconsistent : Error {
    using Error::Error;
};

struct AssumptionViolated : Error {
    using Error::Error;
};

struct OutOfDomain : Error {
    using Error::Error;
};

struct SchemaError : Error {
    using Error::Error;
};

}  // namespace pssm
