#ifndef RESYM_ERRORS_HPP
#define RESYM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace resym {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed files, dimension mismatches, violated preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Malformed edge-list input; carries the offending line number (1-based, 0 = unknown).
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, long line)
      : InputError(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

/// The graph has no globally reachable node (or an operation required one).
class ConnectivityError : public InputError {
 public:
  using InputError::InputError;
};

/// A numerical routine failed: singular operator, no convergence.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace resym

#endif
