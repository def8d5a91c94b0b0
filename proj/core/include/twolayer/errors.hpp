#pragma once

#include <stdexcept>
#include <string>

namespace twolayer {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested at a singular point (coincident source and target).
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Field evaluation too close to the boundary for the plain quadrature rule.
class NearSingularityError : public Error {
 public:
  using Error::Error;
};

/// A quadrature did not reach its target accuracy.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : Error(what + " (achieved error estimate " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Degenerate configuration (grazing incidence, vanishing denominators).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Linear solve failed or the system is numerically singular.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Invalid user configuration; the message names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace twolayer
