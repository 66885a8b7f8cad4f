#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sint {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: bad flags, invalid intervals, bad expressions.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : InputError("syntax error at offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class InvalidBijection : public InputError {
 public:
  using InputError::InputError;
};

/// A computation could not produce a trustworthy number.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Function undefined on a set of positive measure (or at a quadrature node).
class EvaluationError : public NumericalError {
 public:
  EvaluationError(const std::string& what, double x)
      : NumericalError(what + " at x = " + std::to_string(x)), x_(x) {}

  double x() const noexcept { return x_; }

 private:
  double x_;
};

class InvalidMeasure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DivergenceSuspected : public NumericalError {
 public:
  DivergenceSuspected(const std::string& what, double partial)
      : NumericalError(what + " (partial value " + std::to_string(partial) + ")"),
        partial_(partial) {}

  double partial_value() const noexcept { return partial_; }

 private:
  double partial_;
};

class CapReached : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace sint
