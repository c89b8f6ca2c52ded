#pragma once

#include <stdexcept>
#include <string>

namespace hyperpot {

// Invalid input: violated precondition or invariant. Maps to exit code 1.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Iterative method failed to reach tolerance. Maps to exit code 2.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class PoleError : public DomainError {
public:
  using DomainError::DomainError;
};

class DegenerateError : public DomainError {
public:
  using DomainError::DomainError;
};

class ChannelClosedError : public DomainError {
public:
  using DomainError::DomainError;
};

class BoxTooSmallError : public ConvergenceError {
public:
  using ConvergenceError::ConvergenceError;
};

} // namespace hyperpot
