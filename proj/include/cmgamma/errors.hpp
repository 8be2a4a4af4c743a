#pragma once

#include <stdexcept>
#include <string>

namespace cmgamma {

// Argument outside the mathematical domain of an operation (poles of Γ,
// points below a family's domain bound, violated inequality constraints).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Caller misuse: unknown ids, malformed configuration, incompatible inputs.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Quadrature that did not reach its tolerance; carries the best estimate.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_value, double err_estimate)
        : std::runtime_error(what), best_value_(best_value), err_estimate_(err_estimate) {}

    double best_value() const noexcept { return best_value_; }
    double err_estimate() const noexcept { return err_estimate_; }

private:
    double best_value_;
    double err_estimate_;
};

}  // namespace cmgamma
