#pragma once

#include <stdexcept>
#include <string>

namespace tautkit {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (triangulation, layout, tree decomposition or SAT
// files). Carries the 1-based line and column of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// A triangulation (or partial gluing) that violates a structural invariant:
// non-mutually-inverse gluings, a face glued to itself, or an edge
// identified with itself in reverse.
class ValidityError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition (bad index, wrong vector length,
// consumed torus, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace tautkit
