#pragma once

#include <stdexcept>
#include <string>

namespace treeline {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series or iteration hit its term cap before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No sign change found for a bisection.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two routes to the same quantity disagree, or a value left its invariant range.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested structure exceeds a configured size limit.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace treeline
