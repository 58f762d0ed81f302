#pragma once

#include <stdexcept>
#include <string>

namespace ctlab {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature gave up before reaching its tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved_error);
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// Characteristic integration failed (step budget, non-finite values).
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// Grid solver time step violates the CFL restriction.
class CflError : public Error {
 public:
  using Error::Error;
};

}  // namespace ctlab
