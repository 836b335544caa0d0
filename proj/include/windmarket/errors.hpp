#pragma once

#include <stdexcept>
#include <string>

namespace windmarket {

// Input that cannot be read or tokenized (missing file, bad cell, wrong column count).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally readable input that violates a domain invariant.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Solver misuse (dimension mismatch) or numerical breakdown. Never used for
// ordinary outcomes such as infeasible or unbounded models; those are statuses.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace windmarket
