#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two sampled functions live on different grids.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature ran out of subdivisions. Carries the best value seen.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, std::complex<double> best, double estimate)
      : Error(what), best_value(best), error_estimate(estimate) {}

  std::complex<double> best_value;
  double error_estimate;
};

/// An improper integral does not converge.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain an operation accepts.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Mass expression evaluation failed (ln/sqrt of non-positive, division by zero, overflow).
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class PositivityError : public Error {
 public:
  using Error::Error;
};

/// Value outside (F(-inf), F(+inf)).
class RangeError : public Error {
 public:
  using Error::Error;
};

class NotIntegrableError : public Error {
 public:
  using Error::Error;
};

/// An operation's stated precondition does not hold for the given system.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a mass expression. `offset` is the 1-based byte column.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset_, std::vector<std::string> expected_)
      : Error(what), offset(offset_), expected(std::move(expected_)) {}

  std::size_t offset;
  std::vector<std::string> expected;
};

}  // namespace pdm
