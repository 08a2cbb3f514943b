#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace singmc {

/// Input outside the mathematical domain of an operation (bad exponents,
/// non-positive gamma argument, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A computation that was well-posed but failed numerically.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an integrand returns NaN or an infinity at a sampled point.
class NonFiniteIntegrand : public NumericalError {
public:
    NonFiniteIntegrand(std::vector<double> point, double value);

    const std::vector<double>& point() const noexcept { return point_; }
    double value() const noexcept { return value_; }

private:
    std::vector<double> point_;
    double value_;
};

/// Malformed user input: bad expression text, unbound variables, or an
/// integrand whose arity does not match the domain.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace singmc
