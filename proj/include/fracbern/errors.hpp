#pragma once

#include <stdexcept>
#include <string>

namespace fracbern {

/// Argument outside the mathematical domain of an operation. Indicates a
/// caller bug, never a tuning problem.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure did not reach its requested tolerance. Carries the
/// best value found and its error estimate so callers can decide whether to
/// retune or give up.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double best_value, double error_estimate)
        : std::runtime_error(what), best_value_(best_value), error_estimate_(error_estimate) {}

    double best_value() const noexcept { return best_value_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_value_;
    double error_estimate_;
};

/// A root that must exist by construction could not be bracketed.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fracbern
