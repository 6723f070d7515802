/**
 * Exception types shared across the library.
 *
 * Absence of a value (an inconsistent linear system, an unfittable series)
 * is reported through std::optional; the types here are for conditions that
 * stop a computation.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symgrowth {

/// Malformed user input (job files, polynomial strings, bad moduli).
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A documented precondition of an operation does not hold; the operation refuses.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Always a bug or a counterexample.
class InternalFault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace symgrowth
