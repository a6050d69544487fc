#pragma once

#include <stdexcept>
#include <string>

namespace mgoe {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user-supplied configuration (CLI flags, config file values).
class ConfigError : public Error {
public:
    using Error::Error;
};

// A documented precondition was violated by the caller.
class ContractError : public Error {
public:
    using Error::Error;
};

// Numerical failure: eigensolver did not converge, rank-deficient fit, ...
class NumericalError : public Error {
public:
    using Error::Error;
};

// Filesystem / serialization failure.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace mgoe
