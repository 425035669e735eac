#pragma once

#include <stdexcept>
#include <string>

namespace hopial {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (x outside the interval, x <= 0 for Gamma, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A FunctionSpec or FamilySpec violates its invariants.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// Integral diverges (endpoint exponent <= -1) or the integrand is not finite.
class NonIntegrable : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature hit its panel cap before reaching tolerance.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A theorem or lemma hypothesis does not hold. condition() names it.
class PreconditionFailed : public Error {
 public:
  explicit PreconditionFailed(std::string condition)
      : Error("precondition failed: " + condition), condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

class NoCrossing : public Error {
 public:
  using Error::Error;
};

class NoEigenvalueInBracket : public Error {
 public:
  using Error::Error;
};

class SingularCoefficient : public Error {
 public:
  using Error::Error;
};

class NonDifferentiableWeight : public Error {
 public:
  using Error::Error;
};

/// Malformed command line or run configuration. field() is the offending path.
class UsageError : public Error {
 public:
  UsageError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace hopial
