#pragma once

#include <stdexcept>
#include <string>

namespace growthlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the admissible domain (|z| >= 1, bad weight exponent, ...).
struct DomainError : Error {
    using Error::Error;
};

/// 0/0 at an evaluation point; caller must perturb or rebuild the representation.
struct IndeterminateError : Error {
    using Error::Error;
};

/// A pole was hit where a finite value is required.
struct PoleAtEvaluationError : Error {
    using Error::Error;
};

/// Requested derivative order exceeds the handle's supported maximum.
struct UnsupportedOrderError : Error {
    using Error::Error;
};

/// Residual gate failed: the candidate does not solve the equation on the grid.
struct NotASolutionError : Error {
    using Error::Error;
};

struct InsufficientDataError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " (line " + std::to_string(line_) + ", column " + std::to_string(col_) + ")"),
          line(line_), column(col_) {}
};

} // namespace growthlab
