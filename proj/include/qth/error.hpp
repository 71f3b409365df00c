#pragma once

#include <stdexcept>
#include <string>

namespace qth {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of mismatched size (monomials, matrices, module vectors).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Mixing rings or coefficient domains, or a value that has no image in a domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Division by zero or by a non-unit.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unsupported input problem.
class InputError : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// An algebraic invariant that must hold by construction was found violated.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

class ReconstructionError : public Error {
 public:
  using Error::Error;
};

class CompatibilityError : public Error {
 public:
  using Error::Error;
};

class IterationLimitError : public Error {
 public:
  using Error::Error;
};

/// The input does not define a reduced integral extension (no conductor element).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace qth
