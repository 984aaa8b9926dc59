#pragma once

#include <stdexcept>
#include <string>

namespace twistlab {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic outside the domain of an operation: division by zero, a
/// singular pivot, a spectral-parameter pole.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A termination or size guard fired (non-nilpotent exponent, non-unipotent
/// logarithm argument, workspace limit).
class GuardError : public Error {
 public:
  using Error::Error;
};

/// Unknown generator, preset or algebra name.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// A representation failed its own consistency checks while being built.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or transcription input.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace twistlab
