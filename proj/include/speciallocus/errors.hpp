#ifndef SPECIALLOCUS_ERRORS_HPP
#define SPECIALLOCUS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace speciallocus {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: the operation is not defined for these arguments (CLI exit 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A value object failed one of its axioms on construction.
class ValidationError : public DomainError {
 public:
  using DomainError::DomainError;
};

// The operation is defined but a configured cap or budget was hit (CLI exit 2).
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Numerical precision could not be certified within the retry cap.
class PrecisionError : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

// A bounded search ran to its cap without finding a witness.
class NotFoundError : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

}  // namespace speciallocus

#endif  // SPECIALLOCUS_ERRORS_HPP
