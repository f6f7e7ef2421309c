#pragma once

#include <stdexcept>
#include <string>

namespace relsym {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// Raised by hermitian_function when an eigenvalue falls outside the domain of
// the scalar function. Carries the offending eigenvalue.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

class UnsupportedForm : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Bad verification configuration (as opposed to a failed assertion).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

}  // namespace relsym
