#pragma once

#include <stdexcept>
#include <string>

namespace magineq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (empty grids, non-positive parameters).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A bound or solver was evaluated outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parameters the toolkit deliberately does not handle (d >= 4, p = 2*).
class UnsupportedParameterError : public Error {
 public:
  using Error::Error;
};

/// ODE step failure or non-finite quadrature.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// Shooting or root-finding could not bracket / converge.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// A norm or integral of a potential diverges under its tail model.
class IntegrabilityError : public Error {
 public:
  using Error::Error;
};

/// A query falls outside the sampled range of a curve.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Sampled curve violates its monotonicity contract.
class CurveError : public Error {
 public:
  using Error::Error;
};

/// Two independent numerical methods disagree beyond tolerance.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

/// Potential file / config file does not follow its schema.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  [[nodiscard]] int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace magineq
