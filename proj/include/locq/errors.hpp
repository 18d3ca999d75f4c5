#pragma once

#include <stdexcept>
#include <string>

namespace locq {

// Error taxonomy shared by every module; the CLI maps these to exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unsupported field size or an unusable run configuration.
struct ConfigError : Error {
    using Error::Error;
};

// An enumeration would exceed the configured budget.
struct BudgetError : Error {
    using Error::Error;
};

// A caller-visible precondition was violated.
struct InvalidArgument : Error {
    using Error::Error;
};

// A (graph, D) pair whose determinant diagonal is not a nonzero constant.
struct InvalidPresentation : Error {
    using Error::Error;
};

// "Cannot happen" breakage; treated as a bug signal, not a user error.
struct InvariantViolation : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    ParseError(const std::string& msg, int line_no)
        : Error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

}  // namespace locq
