// errors.hpp
//
// Exception hierarchy shared by the analysis library and the CLI.
// The CLI maps ConfigError to exit code 2 and NumericError to exit code 3.

#pragma once

#include <stdexcept>
#include <string>

namespace inac {

/// Root for every numeric failure (bad domain, series region, convergence, rank).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public NumericError {
public:
    using NumericError::NumericError;
};

/// The asymptotic erf expansion was requested outside |z| < 1.
class RegionError : public NumericError {
public:
    using NumericError::NumericError;
};

class ConvergenceError : public NumericError {
public:
    using NumericError::NumericError;
};

/// The SIC decoding order cannot meet the rate target at any SNR.
class InfeasibleError : public NumericError {
public:
    using NumericError::NumericError;
};

class RankError : public NumericError {
public:
    using NumericError::NumericError;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace inac
