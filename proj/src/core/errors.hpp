#pragma once

#include <stdexcept>
#include <string>

namespace fracwave {

// Input outside the mathematical domain of an operation (branch cut, t <= 0, p <= -1/2, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed arguments: sizes, counts, mismatched grids.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Factorization or quadrature failure.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Request exceeds the configured memory/runtime guard.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fracwave
