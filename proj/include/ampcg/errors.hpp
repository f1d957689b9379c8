#pragma once

#include <stdexcept>
#include <string>

namespace ampcg {

// Malformed input files (graph text, CSV, config). CLI maps this to exit 2.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated algorithmic preconditions (e.g. "Z does not separate u from v").
// CLI maps this to exit 3.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ampcg
