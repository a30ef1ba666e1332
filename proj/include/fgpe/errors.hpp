#pragma once

#include <stdexcept>
#include <string>

namespace fgpe {

// Invalid user input: bad grid, out-of-range order, malformed files.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Internal consistency violated (grid mismatch, non-real transform output, bracket inversion).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SolverFailure {
    NonConvergence,
    BoxTooSmall,
    Collapse,
    Aliasing,
    FellToMin,
    UnderResolved,
};

const char* to_string(SolverFailure kind);

class SolverError : public std::runtime_error {
public:
    SolverError(SolverFailure kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    SolverFailure kind() const noexcept { return kind_; }

private:
    SolverFailure kind_;
};

}  // namespace fgpe
