#pragma once

#include <stdexcept>
#include <string>

namespace nh {

/// Inadmissible material constants or malformed user input.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain (e.g. J <= 0).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// det F <= 0 or singular F.
class InvalidDeformation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operation not defined for the requested model or function.
class Unsupported : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Root finder could not bracket or converge.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nh
