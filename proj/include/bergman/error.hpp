#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when a quadrature could not reach its tolerance and the caller
/// asked for strict behaviour.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bergman
