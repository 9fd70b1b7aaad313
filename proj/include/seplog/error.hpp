/*
 * Copyright (c) 2026 The seplog authors
 * SPDX-License-Identifier: MIT
 */
#ifndef SEPLOG_ERROR_HPP
#define SEPLOG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace seplog {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a satisfiability backend fails (process death, malformed
/// response, `unknown` verdict). Distinct from an Unsat answer.
class BackendError : public Error {
public:
  using Error::Error;
};

/// Raised when a formula falls outside the fragment the built-in solver
/// handles (more than two variables per atom, non-unit coefficients).
class FragmentError : public BackendError {
public:
  using BackendError::BackendError;
};

/// Raised on malformed entailment text; carries a position.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

}  // namespace seplog

#endif
