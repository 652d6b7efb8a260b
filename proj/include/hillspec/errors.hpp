#pragma once

#include <stdexcept>
#include <string>

namespace hillspec {

// Invalid run parameters (cutoffs, tolerances, malformed config).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// I/O and parse failures.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Dense eigensolver did not converge.
struct EigenSolveError : std::runtime_error {
    explicit EigenSolveError(const std::string& msg) : std::runtime_error(msg) {}
};

// A structural expectation failed (wrong disk count, rank mismatch, singular block).
struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hillspec
