#pragma once

#include <stdexcept>
#include <string>

namespace pathbench {

// Base class for all toolkit errors. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid parameter or configuration value (exit code 2).
class ParamError : public Error {
public:
    using Error::Error;
};

// A run plan cannot be realized inside the given box (exit code 3).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

// Numerical failure: diverging integration, singular matrices (exit code 4).
class NumericError : public Error {
public:
    using Error::Error;
};

// Filesystem / serialization failure (exit code 5).
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace pathbench
