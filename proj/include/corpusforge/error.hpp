#pragma once

#include <stdexcept>
#include <string>

namespace corpusforge {

// Base class for every domain failure surfaced by the library. The CLI maps
// these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file: carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

// A record or collection breaks one of its invariants.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Caller passed a value outside an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Backend could not be reached or kept failing after the retry budget.
class TransportError : public Error {
 public:
  using Error::Error;
};

// Backend answered but the payload does not match the wire schema. Never retried.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace corpusforge
