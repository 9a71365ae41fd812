#pragma once

#include <stdexcept>
#include <string>

namespace thermowit {

// Input fails a precondition or a format/type invariant (CLI exit code 2).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// The optimization problem has no feasible solution (CLI exit code 3).
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical solver failed to reach its target tolerance (CLI exit code 4).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// Fock-space truncation too small for the requested accuracy (CLI exit code 4).
class TruncationError : public SolverError {
public:
    explicit TruncationError(const std::string& msg) : SolverError(msg) {}
};

// An internal consistency check failed (imaginary residues, lost invariants).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace thermowit
