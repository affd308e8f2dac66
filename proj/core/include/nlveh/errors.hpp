#pragma once

#include <stdexcept>
#include <string>

namespace nlveh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of a formula (e.g. y outside [0, L]).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent user input: config documents, CSV files, units.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed to converge or was ill-posed.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Least-squares extraction from a rank-deficient sample grid.
class FitError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Time integration blew up or lost step resolution.
class DivergenceError : public NumericError {
public:
    using NumericError::NumericError;
};

/// The requested design cannot be realized with positive dimensions.
class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& what, double max_feasible_beta)
        : Error(what), max_feasible_beta_(max_feasible_beta) {}

    double max_feasible_beta() const noexcept { return max_feasible_beta_; }

private:
    double max_feasible_beta_;
};

}  // namespace nlveh
