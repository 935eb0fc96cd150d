#pragma once

#include <stdexcept>
#include <string>

namespace hyperreg {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by the caller: empty parts, shape mismatch, etc.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input exceeds the size an exhaustive or exact routine accepts.
class SizeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed or incompatible file content.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperreg
