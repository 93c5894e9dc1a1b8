#pragma once

#include <stdexcept>
#include <string>

namespace zeta_ladder {

// Invalid argument outside the mathematical domain of an operation
// (non-finite height, t <= 0, L = 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A violated precondition that is not a domain issue, e.g. a window
// length outside the band an identity is stated for.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A zero cache (or ladder table) does not reach far enough.
class CoverageError : public std::runtime_error {
public:
    CoverageError(const std::string& what, double lo, double hi)
        : std::runtime_error(what), lo_(lo), hi_(hi) {}
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

// Evaluation requested at (or numerically on top of) a zero ordinate.
class ExceptionalPointError : public std::runtime_error {
public:
    ExceptionalPointError(const std::string& what, double t)
        : std::runtime_error(what), t_(t) {}
    double t() const noexcept { return t_; }

private:
    double t_;
};

// Limits of the environment: sieve too small, height too large, ...
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Zero count audit failed even after grid refinement.
class ScanAuditError : public std::runtime_error {
public:
    ScanAuditError(const std::string& what, double lo, double hi, long expected, long found)
        : std::runtime_error(what), lo_(lo), hi_(hi), expected_(expected), found_(found) {}
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    long expected() const noexcept { return expected_; }
    long found() const noexcept { return found_; }

private:
    double lo_;
    double hi_;
    long expected_;
    long found_;
};

// A root that must exist by continuity was not bracketed on the scan grid.
class ScanResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OrderUndeterminedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedOrderError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Window whose prime count (or length) does not change.
class DegenerateWindowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace zeta_ladder
